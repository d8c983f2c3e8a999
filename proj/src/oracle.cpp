#include "catbell/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>

#include "catbell/errors.hpp"

namespace catbell {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not thread-safe; executing distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  explicit FftPlan(int n) : n_(n) {
    buffer_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE keeps the plan a pure function of n, so runs are reproducible.
    forward_ = fftw_plan_dft_1d(n, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(n, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buffer_); }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }
  int size() const { return n_; }

 private:
  int n_;
  fftw_complex* buffer_;
  fftw_plan forward_;
  fftw_plan backward_;
};

}  // namespace

Potential Potential::square_well(const Grid& grid) {
  Potential p;
  p.values.resize(grid.n_points);
  const double h = grid.spacing();
  for (int i = 0; i < grid.n_points; ++i) {
    const double gap = 1.0 - std::abs(grid.z(i));
    p.values[i] = gap > 0.5 * h ? 1.0 : (gap < -0.5 * h ? 0.0 : 0.5);
  }
  return p;
}

Potential Potential::none(const Grid& grid) {
  Potential p;
  p.values.assign(grid.n_points, 0.0);
  return p;
}

Potential Potential::constant(const Grid& grid, double value) {
  Potential p;
  p.values.assign(grid.n_points, value);
  return p;
}

double default_time_step(const SystemConfig& cfg, double tau) {
  const double sigma_k = 1.0 / (2.0 * cfg.alpha() * cfg.lambda());
  const double k_occ = cfg.k0() + 8.0 * sigma_k;
  // Potential phase per step capped at 0.025 rad: the splitting error of the
  // discontinuous well radiates fast spectral junk that scales with dt^2, and
  // this cap keeps its wrapped-around mass under the 1e-6 boundary budget.
  const double dt_potential = 0.025;  // u_max = 1
  const double dt_kinetic = (kPi / 4.0) / (k_occ * k_occ);
  return std::min({dt_potential, dt_kinetic, tau / 50.0});
}

std::vector<std::complex<double>> split_step_propagate(
    const Grid& grid, const SystemConfig& cfg, std::span<const std::complex<double>> initial,
    const Potential& potential, BranchSign branch, double t_final, double dt,
    PropagationStats* stats) {
  grid.validate();
  const int n = grid.n_points;
  if (static_cast<int>(initial.size()) != n ||
      static_cast<int>(potential.values.size()) != n) {
    throw ConfigError("split_step_propagate: state/potential size mismatch");
  }
  if (!(dt > 0.0) || !(t_final > 0.0)) {
    throw ConfigError("split_step_propagate: dt and t_final must be positive");
  }
  const int steps = static_cast<int>(std::ceil(t_final / dt - 1e-12));
  const double step = t_final / steps;

  FftPlan fft(n);
  std::complex<double>* psi = fft.data();
  std::copy(initial.begin(), initial.end(), psi);

  // Kinetic phase per full step: exp(-i (q/Lambda)^2 dt), q the FFT wave number.
  const double dq = 2.0 * kPi / (grid.z_max - grid.z_min);
  std::vector<std::complex<double>> kinetic(n);
  for (int m = 0; m < n; ++m) {
    const double q = dq * (m < n / 2 ? m : m - n);
    const double kappa = q / cfg.lambda();
    kinetic[m] = std::polar(1.0 / n, -kappa * kappa * step);  // folds in FFT normalization
  }
  const double s = sign_of(branch);
  std::vector<std::complex<double>> pot_half(n), pot_full(n);
  for (int i = 0; i < n; ++i) {
    pot_half[i] = std::polar(1.0, -s * potential.values[i] * step * 0.5);
    pot_full[i] = pot_half[i] * pot_half[i];
  }

  const double norm0 = grid_norm(grid, {psi, static_cast<std::size_t>(n)});
  PropagationStats local;
  local.steps = steps;
  local.dt = step;
  const int checkpoint = std::max(1, steps / 64);

  auto check = [&](int done) {
    const std::span<const std::complex<double>> view{psi, static_cast<std::size_t>(n)};
    const double drift_now = std::abs(grid_norm(grid, view) - norm0);
    const double edge = boundary_mass(grid, view);
    local.norm_drift = std::max(local.norm_drift, drift_now);
    local.boundary_peak = std::max(local.boundary_peak, edge);
    if (edge > 1e-6) {
      throw NumericsError("split_step_propagate: boundary mass " + std::to_string(edge) +
                          " after " + std::to_string(done) + " steps; grid too small");
    }
    if (drift_now > 1e-6) {
      throw NumericsError("split_step_propagate: norm drift " + std::to_string(drift_now) +
                          "; step too coarse");
    }
  };

  for (int i = 0; i < n; ++i) psi[i] *= pot_half[i];
  for (int st = 0; st < steps; ++st) {
    fft.forward();
    for (int i = 0; i < n; ++i) psi[i] *= kinetic[i];
    fft.backward();
    if (st + 1 < steps) {
      for (int i = 0; i < n; ++i) psi[i] *= pot_full[i];
    } else {
      for (int i = 0; i < n; ++i) psi[i] *= pot_half[i];
    }
    if ((st + 1) % checkpoint == 0 || st + 1 == steps) check(st + 1);
  }

  if (stats) *stats = local;
  return std::vector<std::complex<double>>(psi, psi + n);
}

std::vector<std::complex<double>> GridState::component_e0() const {
  std::vector<std::complex<double>> out(branch_plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (branch_plus[i] + branch_minus[i]);
  return out;
}

std::vector<std::complex<double>> GridState::component_g1() const {
  std::vector<std::complex<double>> out(branch_plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (branch_plus[i] - branch_minus[i]);
  return out;
}

double GridState::total_norm() const {
  return 0.5 * (grid_norm(grid, branch_plus) + grid_norm(grid, branch_minus));
}

GridState evolve_full_state(const SystemConfig& cfg, double tau, const Grid& grid, double dt,
                            PropagationStats* stats) {
  cfg.validate();
  grid.validate();
  if (dt <= 0.0) dt = default_time_step(cfg, tau);
  const auto initial = sample(grid, [&](double z) { return initial_amplitude(z, cfg); });
  const Potential well = Potential::square_well(grid);

  GridState state;
  state.grid = grid;
  state.lambda = cfg.lambda();
  PropagationStats stats_plus, stats_minus;
  std::exception_ptr error_plus, error_minus;

#pragma omp parallel sections
  {
#pragma omp section
    {
      try {
        state.branch_plus = split_step_propagate(grid, cfg, initial, well, BranchSign::plus, tau,
                                                 dt, &stats_plus);
      } catch (...) {
        error_plus = std::current_exception();
      }
    }
#pragma omp section
    {
      try {
        state.branch_minus = split_step_propagate(grid, cfg, initial, well, BranchSign::minus,
                                                  tau, dt, &stats_minus);
      } catch (...) {
        error_minus = std::current_exception();
      }
    }
  }
  if (error_plus) std::rethrow_exception(error_plus);
  if (error_minus) std::rethrow_exception(error_minus);
  if (stats) {
    stats->norm_drift = std::max(stats_plus.norm_drift, stats_minus.norm_drift);
    stats->boundary_peak = std::max(stats_plus.boundary_peak, stats_minus.boundary_peak);
    stats->steps = stats_plus.steps;
    stats->dt = stats_plus.dt;
  }
  return state;
}

GridState sample_analytic_state(const SystemConfig& cfg, double tau, const Grid& grid) {
  GridState state;
  state.grid = grid;
  state.lambda = cfg.lambda();
  state.branch_plus =
      sample(grid, [&](double z) { return branch_amplitude(z, tau, BranchSign::plus, cfg); });
  state.branch_minus =
      sample(grid, [&](double z) { return branch_amplitude(z, tau, BranchSign::minus, cfg); });
  return state;
}

double expectation_ab(const GridState& state, AtomSetting a, FieldSetting b) {
  const auto e0 = state.component_e0();
  const auto g1 = state.component_g1();
  const auto w_eg = cross_wigner_numeric(state.grid, e0, g1, a.pt, state.lambda);
  return 2.0 * std::real(std::polar(1.0, b.beta) * w_eg);
}

namespace {

std::vector<double> expectation_batch_impl(const GridState& state,
                                           std::span<const AtomSetting> atoms,
                                           std::span<const FieldSetting> fields, bool parallel) {
  if (atoms.size() != fields.size()) {
    throw ConfigError("expectation_ab_batch: settings size mismatch");
  }
  const auto e0 = state.component_e0();
  const auto g1 = state.component_g1();
  // Truncation would throw identically for every setting; test once so no
  // exception can surface inside the parallel loop.
  if (boundary_mass(state.grid, e0) > 1e-8 || boundary_mass(state.grid, g1) > 1e-8) {
    throw NumericsError("expectation_ab_batch: grid truncates the state (edge mass > 1e-8)");
  }
  const int n = static_cast<int>(atoms.size());
  std::vector<double> out(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < n; ++i) {
    const auto w_eg = cross_wigner_numeric(state.grid, e0, g1, atoms[i].pt, state.lambda);
    out[i] = 2.0 * std::real(std::polar(1.0, fields[i].beta) * w_eg);
  }
  return out;
}

}  // namespace

std::vector<double> expectation_ab_batch(const GridState& state,
                                         std::span<const AtomSetting> atoms,
                                         std::span<const FieldSetting> fields) {
  return expectation_batch_impl(state, atoms, fields, true);
}

std::vector<double> expectation_ab_batch_serial(const GridState& state,
                                                std::span<const AtomSetting> atoms,
                                                std::span<const FieldSetting> fields) {
  return expectation_batch_impl(state, atoms, fields, false);
}

}  // namespace catbell
