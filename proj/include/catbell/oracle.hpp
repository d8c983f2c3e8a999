#pragma once

#include <complex>
#include <span>
#include <vector>

#include "catbell/chsh.hpp"
#include "catbell/grid.hpp"
#include "catbell/model.hpp"
#include "catbell/wigner.hpp"

namespace catbell {

/// Cavity mode envelope sampled on a grid.  The square well is Theta(1-|z|)
/// with grid points within half a cell of the jump set to half height.
struct Potential {
  std::vector<double> values;

  static Potential square_well(const Grid& grid);
  static Potential none(const Grid& grid);
  static Potential constant(const Grid& grid, double value);
};

struct PropagationStats {
  double norm_drift = 0.0;     // max |norm - norm0| seen at checkpoints
  double boundary_peak = 0.0;  // max boundary mass seen at checkpoints
  int steps = 0;
  double dt = 0.0;
};

/// Default step: the potential phase per step stays below 0.025 rad and the
/// kinetic phase of the highest occupied wave number stays below pi/4.  (The
/// Fourier-space kinetic factor is exact for every mode, so accuracy is set by
/// the occupied band, not the grid Nyquist.)
double default_time_step(const SystemConfig& cfg, double tau);

/// Strang-split propagation of one dressed branch:
///   half potential phase, full kinetic step exp(-i (q/Lambda)^2 dt) in
///   Fourier space, half potential phase.
/// `branch` selects the sign of the optical potential.  Norm and boundary
/// mass are checkpointed; drift > 1e-6 or boundary mass > 1e-6 aborts with
/// NumericsError.
std::vector<std::complex<double>> split_step_propagate(
    const Grid& grid, const SystemConfig& cfg, std::span<const std::complex<double>> initial,
    const Potential& potential, BranchSign branch, double t_final, double dt,
    PropagationStats* stats = nullptr);

/// Two-branch state on a grid: the coefficients of |1,+> and |1,->.  The
/// |e,0> and |g,1> components are (plus +- minus)/2.
struct GridState {
  Grid grid;
  double lambda = 0.0;  // carried along for displaced-parity quadrature
  std::vector<std::complex<double>> branch_plus;
  std::vector<std::complex<double>> branch_minus;

  std::vector<std::complex<double>> component_e0() const;
  std::vector<std::complex<double>> component_g1() const;
  /// 1/2 (|plus|^2 + |minus|^2) integrated over the grid.
  double total_norm() const;
};

/// Propagates the initial Gaussian in both effective potentials +-u(z).
GridState evolve_full_state(const SystemConfig& cfg, double tau, const Grid& grid,
                            double dt = 0.0, PropagationStats* stats = nullptr);

/// Assembles the same two-branch state from the closed-form amplitudes
/// (valid for tau >= T); the reference input for operator-algebra checks.
GridState sample_analytic_state(const SystemConfig& cfg, double tau, const Grid& grid);

/// Direct expectation <A(z,k) B(beta)> on a grid state: in the {|e,0>,|g,1>}
/// subspace sigma x B(beta) is off-diagonal with entries e^{+-i beta}, so
///   <A B> = 2 Re[ e^{i beta} <psi_e0| W(z,k) |psi_g1> ],
/// with the matrix element evaluated by cross_wigner_numeric.
double expectation_ab(const GridState& state, AtomSetting a, FieldSetting b);

/// Batch of settings, evaluated in parallel; order of results matches input.
std::vector<double> expectation_ab_batch(const GridState& state,
                                         std::span<const AtomSetting> atoms,
                                         std::span<const FieldSetting> fields);
std::vector<double> expectation_ab_batch_serial(const GridState& state,
                                                std::span<const AtomSetting> atoms,
                                                std::span<const FieldSetting> fields);

}  // namespace catbell
