#include "catbell/chsh.hpp"

#include <cmath>
#include <numbers>

#include "catbell/errors.hpp"

namespace catbell {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FieldSetting FieldSetting::wrapped(double beta) {
  double b = std::fmod(beta, kTwoPi);
  if (b < 0.0) b += kTwoPi;
  return FieldSetting{b};
}

double correlation(AtomSetting a, FieldSetting b, double tau, const SystemConfig& cfg) {
  return cat_quasiprobability(a.pt, tau, b.beta, cfg);
}

double chsh_sum(const ChshSetting& s, double tau, const SystemConfig& cfg) {
  return correlation(s.a, s.beta, tau, cfg) + correlation(s.a, s.beta_prime, tau, cfg) +
         correlation(s.a_prime, s.beta, tau, cfg) - correlation(s.a_prime, s.beta_prime, tau, cfg);
}

ChshCoefficients chsh_coefficients(AtomSetting a, AtomSetting a_prime, double tau,
                                   const SystemConfig& cfg) {
  const double ca = 0.5 * (wigner_branch(a.pt, tau, BranchSign::plus, cfg) -
                           wigner_branch(a.pt, tau, BranchSign::minus, cfg));
  const double cap = 0.5 * (wigner_branch(a_prime.pt, tau, BranchSign::plus, cfg) -
                            wigner_branch(a_prime.pt, tau, BranchSign::minus, cfg));
  const double sa = wigner_interference(a.pt, tau, cfg);
  const double sap = wigner_interference(a_prime.pt, tau, cfg);
  return {ca + cap, -(sa + sap), ca - cap, sap - sa};
}

PhaseMax max_over_phases(double x1, double y1, double x2, double y2) {
  const double r1 = std::hypot(x1, y1);
  const double r2 = std::hypot(x2, y2);
  const double b1 = r1 > 0.0 ? std::atan2(y1, x1) : 0.0;
  const double b2 = r2 > 0.0 ? std::atan2(y2, x2) : 0.0;
  return {r1 + r2, FieldSetting::wrapped(b1).beta, FieldSetting::wrapped(b2).beta};
}

double chsh_max_closed_form(const ScaledChshPoint& p) {
  // e^{-d^2} E sinh(2xd) assembled from the two branch Gaussians directly;
  // avoids overflow of sinh at large |2xd|.
  auto branch_diff = [&](double x, double kappa) {
    const double k2 = kappa * kappa;
    return 0.5 * (std::exp(-k2 - (x - p.d) * (x - p.d)) - std::exp(-k2 - (x + p.d) * (x + p.d)));
  };
  auto envelope = [&](double x, double kappa) { return std::exp(-kappa * kappa - x * x); };
  const double ph = branch_diff(p.x, p.kappa);
  const double php = branch_diff(p.x_prime, p.kappa_prime);
  const double es = envelope(p.x, p.kappa) * std::sin(2.0 * p.d * (p.kappa - p.kappa0));
  const double esp =
      envelope(p.x_prime, p.kappa_prime) * std::sin(2.0 * p.d * (p.kappa_prime - p.kappa0));
  return std::hypot(ph + php, es + esp) + std::hypot(ph - php, es - esp);
}

ScaledChshPoint scale_settings(PhasePoint a, PhasePoint a_prime, double tau,
                               const SystemConfig& cfg) {
  const double sqrt2a = std::numbers::sqrt2 * cfg.alpha();
  auto x_of = [&](PhasePoint pt) {
    return (pt.z + cfg.z0() - 2.0 * pt.k * tau / cfg.lambda()) / sqrt2a;
  };
  auto kappa_of = [&](PhasePoint pt) { return sqrt2a * cfg.lambda() * (pt.k - cfg.k0()); };
  ScaledChshPoint p;
  p.x = x_of(a);
  p.x_prime = x_of(a_prime);
  p.kappa = kappa_of(a);
  p.kappa_prime = kappa_of(a_prime);
  p.d = separation_d(cfg) / (2.0 * sqrt2a);
  p.kappa0 = sqrt2a * cfg.lambda() * cfg.k0();
  return p;
}

std::pair<PhasePoint, PhasePoint> unscale_settings(const ScaledChshPoint& p, double tau,
                                                   const SystemConfig& cfg) {
  const double sqrt2a = std::numbers::sqrt2 * cfg.alpha();
  const double d_cfg = separation_d(cfg) / (2.0 * sqrt2a);
  const double kappa0_cfg = sqrt2a * cfg.lambda() * cfg.k0();
  if (std::abs(p.d - d_cfg) > 1e-9 * std::max(1.0, d_cfg) ||
      std::abs(p.kappa0 - kappa0_cfg) > 1e-9 * std::max(1.0, kappa0_cfg)) {
    throw ConfigError("unscale_settings: point's (d, kappa0) do not belong to this scenario");
  }
  auto invert = [&](double x, double kappa) {
    const double k = cfg.k0() + kappa / (sqrt2a * cfg.lambda());
    const double z = sqrt2a * x - cfg.z0() + 2.0 * k * tau / cfg.lambda();
    return PhasePoint{z, k};
  };
  return {invert(p.x, p.kappa), invert(p.x_prime, p.kappa_prime)};
}

}  // namespace catbell
