#pragma once

#include <complex>
#include <span>

#include "catbell/grid.hpp"
#include "catbell/model.hpp"

namespace catbell {

/// A displaced-parity measurement setting: displacement (z, k) in scaled units.
struct PhasePoint {
  double z = 0.0;
  double k = 0.0;
};

/// Diagonal displaced-parity expectation of one branch packet,
///   W[+-](z,k) = exp[-2 (a Lambda)^2 (k-k0)^2 - (z + z0 - 2 k t/Lambda +- D/2)^2/(2 a^2)],
/// i.e. the sheared Gaussian Wigner function of that branch; values in (0, 1].
double wigner_branch(PhasePoint pt, double tau, BranchSign branch, const SystemConfig& cfg);

/// Cross-branch interference term
///   W_int(z,k) = exp[-2 (a Lambda)^2 (k-k0)^2 - (z + z0 - 2 k t/Lambda)^2/(2 a^2)]
///                * sin[D Lambda (k - 2 k0)],
/// real, in [-1, 1].
double wigner_interference(PhasePoint pt, double tau, const SystemConfig& cfg);

/// Atom-field correlation surface 1/2 (W+ - W-) cos(beta) - W_int sin(beta).
/// beta = pi/4 weighs lobes and fringes equally (the cat picture).
double cat_quasiprobability(PhasePoint pt, double tau, double beta, const SystemConfig& cfg);

/// Displaced-parity matrix element by quadrature over sampled amplitudes:
///   <psi_a| W(z,k) |psi_b> = Integral dy e^{-2iky} psi_a*(z-y) psi_b(z+y).
/// Both amplitudes must share `grid`; z snaps to the nearest half-cell so the
/// reflected pairs (z-y, z+y) land on grid points; the y sum is a trapezoid
/// with step h.  `lambda` converts k (sigma units) to the grid wave number.
/// Throws NumericsError if either state carries visible weight at the grid
/// edges (support truncated).
std::complex<double> cross_wigner_numeric(const Grid& grid,
                                          std::span<const std::complex<double>> psi_a,
                                          std::span<const std::complex<double>> psi_b,
                                          PhasePoint pt, double lambda);

}  // namespace catbell
