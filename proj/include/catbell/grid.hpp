#pragma once

#include <complex>
#include <span>
#include <vector>

#include "catbell/model.hpp"

namespace catbell {

/// Uniform spatial grid in z/L.  n_points is kept a power of two so the FFT
/// propagator and the quadrature routines can share grids.
struct Grid {
  double z_min = 0.0;
  double z_max = 0.0;
  int n_points = 0;

  double spacing() const { return (z_max - z_min) / n_points; }
  double z(int i) const { return z_min + spacing() * i; }

  /// Throws ConfigError unless n_points is a power of two >= 8 and the
  /// extent is positive.
  void validate() const;

  /// Smallest grid that holds the packet, its dispersed final state and the
  /// back-reflected component, resolving both the packet width (>= 16 points
  /// per alpha) and the shortest occupied de Broglie wavelength (>= 8 points
  /// per wavelength).  n_points of 0 picks the smallest adequate power of two
  /// (at least 2^12); an explicit value overrides.
  static Grid default_for(const SystemConfig& cfg, double tau, int n_points = 0);

  /// Number of grid points per initial packet width / per shortest occupied
  /// de Broglie wavelength; sampling diagnostics used by the verifier.
  double points_per_alpha(const SystemConfig& cfg) const;
  double points_per_wavelength(const SystemConfig& cfg) const;

  /// Nearest point of the half-cell lattice (the evaluation points of the
  /// displaced-parity quadrature).
  double snap_half(double z) const;
};

/// h * sum |psi|^2 over the grid.
double grid_norm(const Grid& grid, std::span<const std::complex<double>> psi);

/// Probability density summed over the outermost cells of each edge, as a
/// proxy for mass that is about to leave (or has left) the grid.
double boundary_mass(const Grid& grid, std::span<const std::complex<double>> psi,
                     int edge_cells = 8);

/// Density centroid restricted to a window of +-half_width around the density
/// maximum; windowing keeps stray reflected components from biasing the center.
double windowed_centroid(const Grid& grid, std::span<const std::complex<double>> psi,
                         double half_width);

/// |<a|b>|^2 / (<a|a><b|b>).
double fidelity(const Grid& grid, std::span<const std::complex<double>> a,
                std::span<const std::complex<double>> b);

/// Samples an analytic amplitude on the grid.
template <typename F>
std::vector<std::complex<double>> sample(const Grid& grid, F&& amplitude) {
  std::vector<std::complex<double>> out(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) out[i] = amplitude(grid.z(i));
  return out;
}

}  // namespace catbell
