#pragma once

#include <utility>

#include "catbell/model.hpp"
#include "catbell/wigner.hpp"

namespace catbell {

/// Displacement of the atomic parity measurement.
struct AtomSetting {
  PhasePoint pt;
};

/// Phase of the dichotomic field quadrature e^{i beta}|0><1| + e^{-i beta}|1><0|.
struct FieldSetting {
  double beta = 0.0;

  static FieldSetting wrapped(double beta);
};

/// The six real parameters of one CHSH evaluation.
struct ChshSetting {
  AtomSetting a;
  AtomSetting a_prime;
  FieldSetting beta;
  FieldSetting beta_prime;
};

/// Measurement settings in the dimensionless coordinates that diagonalize the
/// phase-maximized sum:
///   x      = (z + z0 - 2 k t / Lambda) / (sqrt(2) a)
///   kappa  = sqrt(2) a Lambda (k - k0)
///   d      = D / (2 sqrt(2) a)
///   kappa0 = sqrt(2) a Lambda k0
struct ScaledChshPoint {
  double x = 0.0;
  double x_prime = 0.0;
  double kappa = 0.0;
  double kappa_prime = 0.0;
  double d = 0.0;
  double kappa0 = 0.0;
};

/// <A(z,k) B(beta)> = 1/2 (W+ - W-) cos(beta) - W_int sin(beta); in [-1, 1].
double correlation(AtomSetting a, FieldSetting b, double tau, const SystemConfig& cfg);

/// C(a,b) + C(a,b') + C(a',b) - C(a',b'); Tsirelson-bounded by 2 sqrt(2).
double chsh_sum(const ChshSetting& s, double tau, const SystemConfig& cfg);

/// Coefficients of B = X1 cos(beta) + Y1 sin(beta) + X2 cos(beta') + Y2 sin(beta'),
/// collected from the two atomic settings.
struct ChshCoefficients {
  double x1, y1, x2, y2;
};

ChshCoefficients chsh_coefficients(AtomSetting a, AtomSetting a_prime, double tau,
                                   const SystemConfig& cfg);

struct PhaseMax {
  double value;
  double beta_star;
  double beta_prime_star;
};

/// Maximum of X1 cos b + Y1 sin b + X2 cos b' + Y2 sin b' over the phases:
/// sqrt(X1^2+Y1^2) + sqrt(X2^2+Y2^2), attained at the atan2 phases (0 for a
/// degenerate zero pair).
PhaseMax max_over_phases(double x1, double y1, double x2, double y2);

/// Phase-maximized CHSH sum in scaled coordinates:
///   B' = sqrt[e^{-2d^2}(E sinh(2xd) + E' sinh(2x'd))^2 + (E s + E' s')^2]
///      + sqrt[e^{-2d^2}(E sinh(2xd) - E' sinh(2x'd))^2 + (E s - E' s')^2],
/// E = e^{-kappa^2 - x^2}, s = sin(2d(kappa - kappa0)), primed likewise.
double chsh_max_closed_form(const ScaledChshPoint& p);

/// Maps two atomic settings into scaled coordinates for a given scenario.
ScaledChshPoint scale_settings(PhasePoint a, PhasePoint a_prime, double tau,
                               const SystemConfig& cfg);

/// Inverse map; p.d and p.kappa0 must be the scenario's own values.
std::pair<PhasePoint, PhasePoint> unscale_settings(const ScaledChshPoint& p, double tau,
                                                   const SystemConfig& cfg);

}  // namespace catbell
