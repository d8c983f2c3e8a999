#include "catbell/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "catbell/nelder_mead.hpp"

namespace catbell {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  std::uint64_t i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

struct DesignObjective {
  const OptimizeBounds& bounds;

  double operator()(std::span<const double> q) const {
    const ScaledChshPoint p{q[0], q[1], q[2], q[3], q[4], q[5]};
    if (std::abs(p.x) > bounds.x_abs || std::abs(p.x_prime) > bounds.x_abs ||
        std::abs(p.kappa) > bounds.kappa_abs || std::abs(p.kappa_prime) > bounds.kappa_abs) {
      return kNegInf;
    }
    if (!(p.d > 0.0) || p.d > bounds.d_max) return kNegInf;
    if (!(p.kappa0 > 0.0) || p.kappa0 > std::numbers::pi / (2.0 * p.d)) return kNegInf;
    return chsh_max_closed_form(p);
  }
};

struct FixedObjective {
  const OptimizeBounds& bounds;
  double d;
  double kappa0;

  double operator()(std::span<const double> q) const {
    const ScaledChshPoint p{q[0], q[1], q[2], q[3], d, kappa0};
    if (std::abs(p.x) > bounds.x_abs || std::abs(p.x_prime) > bounds.x_abs ||
        std::abs(p.kappa) > bounds.kappa_abs || std::abs(p.kappa_prime) > bounds.kappa_abs) {
      return kNegInf;
    }
    return chsh_max_closed_form(p);
  }
};

ScaledChshPoint canonical(ScaledChshPoint p) {
  // (x, x') -> (-x, -x') leaves the objective invariant; report preferring x > 0.
  if (p.x < 0.0) {
    p.x = -p.x;
    p.x_prime = -p.x_prime;
  }
  return p;
}

OptimumReport run_multistart(const SystemConfig& cfg, double tau, OptimizeMode mode, int starts,
                             std::uint64_t seed, const OptimizeBounds& bounds, bool parallel) {
  const int dim = mode == OptimizeMode::design ? 6 : 4;
  const ScaledChshPoint scenario =
      scale_settings({0.0, cfg.k0()}, {0.0, cfg.k0()}, tau, cfg);

  // Cranley-Patterson rotation of a Halton set: deterministic in the seed.
  std::uint64_t state = seed ^ 0xa02bdbf7bb3c0a7ULL;
  std::vector<double> rotation(dim);
  for (double& r : rotation) r = unit_double(splitmix64(state));
  static constexpr int kBases[6] = {2, 3, 5, 7, 11, 13};

  auto start_point = [&](int s) {
    std::vector<double> q(dim);
    for (int j = 0; j < dim; ++j) {
      double u = halton(static_cast<std::uint64_t>(s) + 1, kBases[j]) + rotation[j];
      u -= std::floor(u);
      switch (j) {
        case 0:
        case 1: q[j] = bounds.x_abs * (2.0 * u - 1.0); break;
        case 2:
        case 3: q[j] = bounds.kappa_abs * (2.0 * u - 1.0); break;
        case 4: q[j] = 0.05 + (bounds.d_max - 0.05) * u; break;
        case 5: q[j] = (0.05 + 0.9 * u) * std::numbers::pi / (2.0 * q[4]); break;
      }
    }
    return q;
  };

  std::vector<NelderMeadResult> results(starts);
  NelderMeadOptions nm;

  auto solve_one = [&](int s) {
    const std::vector<double> q0 = start_point(s);
    std::vector<double> step(dim);
    for (int j = 0; j < dim; ++j) {
      step[j] = j < 4 ? 0.25 : (j == 4 ? 0.15 : 0.1 / std::max(q0[4], 0.1));
    }
    if (mode == OptimizeMode::design) {
      results[s] = nelder_mead_maximize(DesignObjective{bounds}, q0, step, nm);
    } else {
      results[s] = nelder_mead_maximize(FixedObjective{bounds, scenario.d, scenario.kappa0}, q0,
                                        step, nm);
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < starts; ++s) solve_one(s);
  } else {
    for (int s = 0; s < starts; ++s) solve_one(s);
  }

  int best = -1;
  for (int s = 0; s < starts; ++s) {
    if (!results[s].converged) continue;
    if (best < 0 || results[s].value > results[best].value) best = s;
  }

  OptimumReport report;
  report.starts = starts;
  if (best < 0) {
    report.converged = false;
    return report;
  }
  const auto& win = results[best];
  ScaledChshPoint p;
  p.x = win.point[0];
  p.x_prime = win.point[1];
  p.kappa = win.point[2];
  p.kappa_prime = win.point[3];
  p.d = dim == 6 ? win.point[4] : scenario.d;
  p.kappa0 = dim == 6 ? win.point[5] : scenario.kappa0;
  p = canonical(p);

  report.best_point = p;
  report.best_value = chsh_max_closed_form(p);
  report.iterations = win.iterations;
  report.converged = true;

  // Phases attaining the maximum, from the coefficient decomposition
  // (half_diff is 1/2 (W+ - W-) in scaled coordinates).
  auto half_diff = [&](double x, double kappa) {
    const double k2 = kappa * kappa;
    return 0.5 * (std::exp(-k2 - (x + p.d) * (x + p.d)) - std::exp(-k2 - (x - p.d) * (x - p.d)));
  };
  const double ca = half_diff(p.x, p.kappa);
  const double cap = half_diff(p.x_prime, p.kappa_prime);
  const double sa = std::exp(-p.kappa * p.kappa - p.x * p.x) *
                    std::sin(2.0 * p.d * (p.kappa - p.kappa0));
  const double sap = std::exp(-p.kappa_prime * p.kappa_prime - p.x_prime * p.x_prime) *
                     std::sin(2.0 * p.d * (p.kappa_prime - p.kappa0));
  const PhaseMax pm = max_over_phases(ca + cap, -(sa + sap), ca - cap, sap - sa);
  report.beta_star = pm.beta_star;
  report.beta_prime_star = pm.beta_prime_star;
  return report;
}

}  // namespace

OptimumReport optimize_chsh(const SystemConfig& cfg, double tau, OptimizeMode mode, int starts,
                            std::uint64_t seed, const OptimizeBounds& bounds) {
  return run_multistart(cfg, tau, mode, starts, seed, bounds, true);
}

OptimumReport optimize_chsh_serial(const SystemConfig& cfg, double tau, OptimizeMode mode,
                                   int starts, std::uint64_t seed, const OptimizeBounds& bounds) {
  return run_multistart(cfg, tau, mode, starts, seed, bounds, false);
}

}  // namespace catbell
