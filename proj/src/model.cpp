#include "catbell/model.hpp"

#include <cmath>
#include <numbers>

namespace catbell {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
const cplx kI{0.0, 1.0};
}  // namespace

void SystemConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(scale_product) || !positive(z0_over_L) || !positive(alpha_over_L) ||
      !positive(k0_scaled) || !positive(gamma_t)) {
    throw ConfigError("all of scale_product, z0_over_L, alpha_over_L, k0_scaled, gamma_t "
                      "must be finite and positive");
  }
}

double separation_d(const SystemConfig& cfg) { return 2.0 / (cfg.k0() * cfg.k0()); }

double transit_time(const SystemConfig& cfg) { return cfg.z0() * cfg.lambda() / cfg.k0(); }

double drift(const SystemConfig& cfg, double tau) { return 2.0 * cfg.k0() * tau / cfg.lambda(); }

double spread_term(const SystemConfig& cfg, double tau) {
  return tau / (cfg.lambda() * cfg.lambda() * cfg.alpha());
}

double width_at(const SystemConfig& cfg, double tau) {
  return std::hypot(cfg.alpha(), spread_term(cfg, tau));
}

DerivedScales derive_scales(const SystemConfig& cfg, double tau) {
  return {separation_d(cfg), transit_time(cfg), cfg.alpha(), spread_term(cfg, tau)};
}

std::complex<double> initial_amplitude(double z, const SystemConfig& cfg) {
  const double a = cfg.alpha();
  const double norm = std::pow(2.0 * kPi * a * a, -0.25);
  const double gauss = std::exp(-(z + cfg.z0()) * (z + cfg.z0()) / (4.0 * a * a));
  return norm * gauss * std::exp(kI * (cfg.k0() * cfg.lambda() * z));
}

double phase_phi(double z, double tau, double center, const SystemConfig& cfg) {
  if (tau <= 0.0) {
    throw ValidityError("phase_phi requires t > 0; use initial_amplitude at t = 0");
  }
  const double a = cfg.alpha();
  const double w = spread_term(cfg, tau);
  const double moving = z + center - drift(cfg, tau);
  const double quadratic = w * moving * moving / (4.0 * a * (a * a + w * w));
  return cfg.k0() * cfg.lambda() * z - cfg.k0() * cfg.k0() * tau + quadratic;
}

namespace {

cplx dispersed_packet(double z, double tau, double center_offset, double extra_phase,
                      const SystemConfig& cfg) {
  const double a = cfg.alpha();
  const double w = spread_term(cfg, tau);
  const cplx complex_width{a, w};
  const cplx prefactor = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * complex_width);
  const double arg = z + cfg.z0() - drift(cfg, tau) + center_offset;
  const double gauss = std::exp(-arg * arg / (4.0 * (a * a + w * w)));
  const double phi = phase_phi(z, tau, cfg.z0() + center_offset, cfg);
  return std::exp(kI * (extra_phase + phi)) * prefactor * gauss;
}

}  // namespace

std::complex<double> branch_amplitude(double z, double tau, BranchSign branch,
                                      const SystemConfig& cfg) {
  const double transit = transit_time(cfg);
  if (tau + 1e-9 < transit) {
    throw ValidityError("branch_amplitude is valid only for t >= T (after the cavity)");
  }
  const double s = sign_of(branch);
  const double d = separation_d(cfg);
  const double kick = -s * cfg.k0() * cfg.lambda() * d / 2.0;
  return dispersed_packet(z, tau, s * d / 2.0, kick, cfg);
}

std::complex<double> free_amplitude(double z, double tau, const SystemConfig& cfg) {
  if (tau <= 0.0) return initial_amplitude(z, cfg);
  return dispersed_packet(z, tau, 0.0, 0.0, cfg);
}

GeometryReport check_geometry(const SystemConfig& cfg, double tau) {
  GeometryReport r;
  r.packet_starts_outside_well = cfg.z0() > 1.0 + 3.0 * cfg.alpha();
  r.measurement_after_transit = tau + 1e-9 >= transit_time(cfg);
  const double w = width_at(cfg, tau);
  const double near_center = -cfg.z0() + drift(cfg, tau) - separation_d(cfg) / 2.0;
  r.branches_clear_of_well = near_center > 1.0 + 3.0 * w;
  return r;
}

}  // namespace catbell
