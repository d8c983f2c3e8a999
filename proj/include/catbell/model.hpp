#pragma once

#include <complex>

#include "catbell/errors.hpp"

namespace catbell {

// Everything in this library works in dimensionless units:
//   lengths      in units of L        (half width of the interaction zone),
//   wave numbers in units of sigma = sqrt(2 m gamma / hbar),
//   times        in units of 1/gamma  (inverse atom-field coupling).
// Only the product Lambda = sigma * L enters as a free parameter, so a
// physical scenario is fully specified by the five numbers below.
//
// Useful identities in these units (hbar/m = 2 gamma / sigma^2):
//   packet drift          :  z(t) - z(0)    = 2 k0 t / Lambda
//   dispersive half-width :  hbar t/(2 a m) = t / (Lambda^2 a)
//   branch separation     :  D              = 2 / k0^2
//   classical transit time:  T              = z0 Lambda / k0
struct SystemConfig {
  double scale_product;  // Lambda = sqrt(2 m gamma/hbar) * L
  double z0_over_L;      // initial packet center sits at -z0
  double alpha_over_L;   // initial packet width
  double k0_scaled;      // mean wave number
  double gamma_t;        // measurement time

  double lambda() const { return scale_product; }
  double z0() const { return z0_over_L; }
  double alpha() const { return alpha_over_L; }
  double k0() const { return k0_scaled; }
  double tau() const { return gamma_t; }

  /// Throws ConfigError unless all five parameters are finite and positive.
  void validate() const;
};

/// Dressed-branch selector: |1,+> evolves in +u(z), |1,-> in -u(z).
enum class BranchSign { plus, minus };

inline double sign_of(BranchSign b) { return b == BranchSign::plus ? 1.0 : -1.0; }

/// Spatial separation of the two branch packets after full transit, D/L = 2/k0^2.
double separation_d(const SystemConfig& cfg);

/// Classical transit time from -z0 to +z0 in scaled units: gamma*T = z0 * Lambda / k0.
/// (T = 2 z0 / (hbar k0 / m); with hbar/m = 2 gamma/sigma^2 this reduces to the
/// expression above. Cross-checked against grid propagation in the test suite.)
double transit_time(const SystemConfig& cfg);

/// Distance travelled by the packet center in time tau: 2 k0 tau / Lambda.
double drift(const SystemConfig& cfg, double tau);

/// Dispersive width term hbar*t/(2 alpha m) in units of L: tau / (Lambda^2 alpha).
double spread_term(const SystemConfig& cfg, double tau);

/// Time-dependent packet width sqrt(alpha^2 + (hbar t / 2 alpha m)^2).
double width_at(const SystemConfig& cfg, double tau);

struct DerivedScales {
  double d_over_l;      // branch separation
  double transit;       // gamma * T
  double width_re;      // alpha
  double width_im;      // hbar t / (2 alpha m), scaled
};

DerivedScales derive_scales(const SystemConfig& cfg, double tau);

/// Initial Gaussian amplitude (2 pi a^2)^(-1/4) exp[-(z+z0)^2/(4a^2) + i k0 Lambda z],
/// unit-normalized in z/L.
std::complex<double> initial_amplitude(double z, const SystemConfig& cfg);

/// Free-dispersion phase
///   phi(z,t;c) = k0 Lambda z - k0^2 t + w (z + c - drift)^2 / (4 a (a^2 + w^2)),
/// w = spread_term(t). Throws ValidityError for t <= 0 (callers use
/// initial_amplitude there; the limit of the quadratic term is 0).
double phase_phi(double z, double tau, double center, const SystemConfig& cfg);

/// Post-transit branch packet
///   Phi[+-](z,t) = exp{i[-+ k0 Lambda D/2 + phi(z,t; z0 +- D/2)]}
///                  / sqrt(sqrt(2 pi)(a + i w))
///                  * exp[-(z + z0 - drift +- D/2)^2 / (4 (a^2 + w^2))].
/// Valid only after the cavity; throws ValidityError for tau < transit_time.
std::complex<double> branch_amplitude(double z, double tau, BranchSign branch,
                                      const SystemConfig& cfg);

/// Exact freely evolved packet (no interaction zone): branch formula with D = 0.
/// Valid for all tau >= 0; tau = 0 returns the initial amplitude.
std::complex<double> free_amplitude(double z, double tau, const SystemConfig& cfg);

/// Geometric sanity of a scenario.  These do not hold for every parameter set
/// the closed-form correlation machinery accepts (the phase-space formulas only
/// require tau >= T), so they are reported rather than enforced.
struct GeometryReport {
  bool packet_starts_outside_well;  // z0 > 1 + 3 alpha
  bool measurement_after_transit;   // tau >= T
  bool branches_clear_of_well;      // centers beyond 1 + 3 width(t)
  bool all() const {
    return packet_starts_outside_well && measurement_after_transit && branches_clear_of_well;
  }
};

GeometryReport check_geometry(const SystemConfig& cfg, double tau);

}  // namespace catbell
