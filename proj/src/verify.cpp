#include "catbell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "json.hpp"

#include "catbell/errors.hpp"
#include "catbell/oracle.hpp"
#include "catbell/scan.hpp"

namespace catbell {

namespace {

VerifyCheck make_check(std::string name, double measured, double threshold, bool larger_is_better,
                       std::string note = {}) {
  VerifyCheck c;
  c.name = std::move(name);
  c.measured = measured;
  c.threshold = threshold;
  c.larger_is_better = larger_is_better;
  c.pass = larger_is_better ? measured >= threshold : measured <= threshold;
  c.note = std::move(note);
  return c;
}

VerifyCheck failed_check(std::string name, double threshold, bool larger_is_better,
                         std::string note) {
  VerifyCheck c;
  c.name = std::move(name);
  c.measured = std::numeric_limits<double>::quiet_NaN();
  c.threshold = threshold;
  c.larger_is_better = larger_is_better;
  c.pass = false;
  c.note = std::move(note);
  return c;
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["grid_points"] = grid_points;
  j["points_per_alpha"] = points_per_alpha;
  j["points_per_wavelength"] = points_per_wavelength;
  j["dt"] = dt;
  j["all_pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    if (std::isnan(c.measured)) {
      jc["measured"] = nullptr;
    } else {
      jc["measured"] = c.measured;
    }
    jc["threshold"] = c.threshold;
    jc["comparison"] = c.larger_is_better ? ">=" : "<=";
    jc["pass"] = c.pass;
    if (!c.note.empty()) jc["note"] = c.note;
    j["checks"].push_back(jc);
  }
  return j.dump(2);
}

VerifyReport run_verification(const SystemConfig& cfg, const Grid& grid, double dt,
                              std::uint64_t seed) {
  cfg.validate();
  grid.validate();
  const double tau = cfg.tau();
  if (dt <= 0.0) dt = default_time_step(cfg, tau);

  VerifyReport report;
  report.grid_points = grid.n_points;
  report.points_per_alpha = grid.points_per_alpha(cfg);
  report.points_per_wavelength = grid.points_per_wavelength(cfg);
  report.dt = dt;

  const std::string sampling_note = "points/alpha=" + std::to_string(report.points_per_alpha) +
                                    ", points/wavelength=" +
                                    std::to_string(report.points_per_wavelength);

  // 1. Free propagation against the exact dispersing Gaussian.
  try {
    const auto initial = sample(grid, [&](double z) { return initial_amplitude(z, cfg); });
    const auto free_numeric = split_step_propagate(grid, cfg, initial, Potential::none(grid),
                                                   BranchSign::plus, tau, dt);
    const auto free_exact = sample(grid, [&](double z) { return free_amplitude(z, tau, cfg); });
    report.checks.push_back(make_check("free_propagation_fidelity",
                                       fidelity(grid, free_exact, free_numeric), 1.0 - 1e-10,
                                       true));
  } catch (const NumericsError& e) {
    report.checks.push_back(
        failed_check("free_propagation_fidelity", 1.0 - 1e-10, true,
                     std::string(e.what()) + "; " + sampling_note));
  }

  // 2-4. Square-well run: norm drift, branch fidelities, separation.
  try {
    PropagationStats stats;
    const GridState numeric = evolve_full_state(cfg, tau, grid, dt, &stats);
    report.checks.push_back(make_check("norm_drift", stats.norm_drift, 1e-8, false));

    const GridState analytic = sample_analytic_state(cfg, tau, grid);
    report.checks.push_back(make_check(
        "branch_fidelity_plus", fidelity(grid, analytic.branch_plus, numeric.branch_plus), 0.999,
        true));
    report.checks.push_back(make_check(
        "branch_fidelity_minus", fidelity(grid, analytic.branch_minus, numeric.branch_minus),
        0.999, true));

    const double window = 4.0 * width_at(cfg, tau);
    const double sep = windowed_centroid(grid, numeric.branch_minus, window) -
                       windowed_centroid(grid, numeric.branch_plus, window);
    report.checks.push_back(make_check("center_separation_error",
                                       std::abs(sep - separation_d(cfg)), grid.spacing(), false,
                                       "measured separation " + std::to_string(sep)));
  } catch (const NumericsError& e) {
    const std::string note = std::string(e.what()) + "; " + sampling_note;
    report.checks.push_back(failed_check("norm_drift", 1e-8, false, note));
    report.checks.push_back(failed_check("branch_fidelity_plus", 0.999, true, note));
    report.checks.push_back(failed_check("branch_fidelity_minus", 0.999, true, note));
    report.checks.push_back(failed_check("center_separation_error", grid.spacing(), false, note));
  }

  // 5-6. Operator algebra on the closed-form state (independent of dynamics).
  try {
    const GridState analytic = sample_analytic_state(cfg, tau, grid);
    const double d = separation_d(cfg);
    const double sigma_k = 1.0 / (2.0 * cfg.alpha() * cfg.lambda());
    const double mid = -cfg.z0() + drift(cfg, tau);

    double wigner_err = 0.0;
    for (int i = 0; i < 40; ++i) {
      const double z = mid + (d + 4.0 * cfg.alpha()) * (2.0 * counter_uniform(seed, i, 0) - 1.0);
      const double k = cfg.k0() + 3.0 * sigma_k * (2.0 * counter_uniform(seed, i, 1) - 1.0);
      const PhasePoint pt{z, k};
      const auto wpp = cross_wigner_numeric(grid, analytic.branch_plus, analytic.branch_plus, pt,
                                            cfg.lambda());
      const auto wmm = cross_wigner_numeric(grid, analytic.branch_minus, analytic.branch_minus,
                                            pt, cfg.lambda());
      const auto wpm = cross_wigner_numeric(grid, analytic.branch_plus, analytic.branch_minus,
                                            pt, cfg.lambda());
      const auto wmp = cross_wigner_numeric(grid, analytic.branch_minus, analytic.branch_plus,
                                            pt, cfg.lambda());
      // Quadrature points snap z to the half-cell lattice; compare at the
      // snapped coordinate.
      const PhasePoint snapped{grid.snap_half(pt.z), pt.k};
      wigner_err = std::max(
          wigner_err,
          std::abs(wpp.real() - wigner_branch(snapped, tau, BranchSign::plus, cfg)));
      wigner_err = std::max(
          wigner_err,
          std::abs(wmm.real() - wigner_branch(snapped, tau, BranchSign::minus, cfg)));
      const auto wint = std::complex<double>(0.0, 0.5) * (wpm - wmp);
      wigner_err =
          std::max(wigner_err, std::abs(wint.real() - wigner_interference(snapped, tau, cfg)));
    }
    report.checks.push_back(make_check("wigner_quadrature_max_abs_error", wigner_err, 1e-6,
                                       false));

    std::vector<AtomSetting> atoms;
    std::vector<FieldSetting> fields;
    for (int i = 0; i < 50; ++i) {
      const double z =
          mid + (d + 4.0 * cfg.alpha()) * (2.0 * counter_uniform(seed, 1000 + i, 0) - 1.0);
      const double k =
          cfg.k0() + 3.0 * sigma_k * (2.0 * counter_uniform(seed, 1000 + i, 1) - 1.0);
      atoms.push_back(AtomSetting{{grid.snap_half(z), k}});
      fields.push_back(
          FieldSetting{2.0 * std::numbers::pi * counter_uniform(seed, 1000 + i, 2)});
    }
    const auto direct = expectation_ab_batch(analytic, atoms, fields);
    double corr_err = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double closed = correlation(atoms[i], fields[i], tau, cfg);
      corr_err = std::max(corr_err, std::abs(direct[i] - closed));
    }
    report.checks.push_back(make_check("correlation_max_abs_error", corr_err, 1e-5, false));
  } catch (const NumericsError& e) {
    const std::string note = std::string(e.what()) + "; " + sampling_note;
    report.checks.push_back(failed_check("wigner_quadrature_max_abs_error", 1e-6, false, note));
    report.checks.push_back(failed_check("correlation_max_abs_error", 1e-5, false, note));
  }

  return report;
}

}  // namespace catbell
