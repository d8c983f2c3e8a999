#include "catbell/wigner.hpp"

#include <cmath>

#include "catbell/errors.hpp"

namespace catbell {

namespace {

void require_post_transit(double tau, const SystemConfig& cfg) {
  if (tau + 1e-9 < transit_time(cfg)) {
    throw ValidityError("Wigner closed forms are valid only for t >= T");
  }
}

double envelope(PhasePoint pt, double tau, double offset, const SystemConfig& cfg) {
  const double al = cfg.alpha() * cfg.lambda();
  const double dk = pt.k - cfg.k0();
  const double sheared = pt.z + cfg.z0() - 2.0 * pt.k * tau / cfg.lambda() + offset;
  return std::exp(-2.0 * al * al * dk * dk -
                  sheared * sheared / (2.0 * cfg.alpha() * cfg.alpha()));
}

}  // namespace

double wigner_branch(PhasePoint pt, double tau, BranchSign branch, const SystemConfig& cfg) {
  require_post_transit(tau, cfg);
  return envelope(pt, tau, sign_of(branch) * separation_d(cfg) / 2.0, cfg);
}

double wigner_interference(PhasePoint pt, double tau, const SystemConfig& cfg) {
  require_post_transit(tau, cfg);
  const double arg = separation_d(cfg) * cfg.lambda() * (pt.k - 2.0 * cfg.k0());
  return envelope(pt, tau, 0.0, cfg) * std::sin(arg);
}

double cat_quasiprobability(PhasePoint pt, double tau, double beta, const SystemConfig& cfg) {
  require_post_transit(tau, cfg);
  const double wp = envelope(pt, tau, separation_d(cfg) / 2.0, cfg);
  const double wm = envelope(pt, tau, -separation_d(cfg) / 2.0, cfg);
  const double arg = separation_d(cfg) * cfg.lambda() * (pt.k - 2.0 * cfg.k0());
  const double wint = envelope(pt, tau, 0.0, cfg) * std::sin(arg);
  return 0.5 * (wp - wm) * std::cos(beta) - wint * std::sin(beta);
}

std::complex<double> cross_wigner_numeric(const Grid& grid,
                                          std::span<const std::complex<double>> psi_a,
                                          std::span<const std::complex<double>> psi_b,
                                          PhasePoint pt, double lambda) {
  if (static_cast<int>(psi_a.size()) != grid.n_points ||
      static_cast<int>(psi_b.size()) != grid.n_points) {
    throw ConfigError("cross_wigner_numeric: amplitudes must live on the given grid");
  }
  if (boundary_mass(grid, psi_a) > 1e-8 || boundary_mass(grid, psi_b) > 1e-8) {
    throw NumericsError("cross_wigner_numeric: grid truncates the state (edge mass > 1e-8)");
  }
  const double h = grid.spacing();
  const int n = grid.n_points;
  // Snap z onto the half-cell lattice so the reflected pair (z-y, z+y) lands
  // on grid points; y then runs over multiples of h of matching parity.
  const long long m2 = std::llround(2.0 * (pt.z - grid.z_min) / h);
  if (m2 < 0 || m2 > 2LL * (n - 1)) return {0.0, 0.0};  // displacement outside the grid

  const long long y2_max = std::min(m2, 2LL * (n - 1) - m2);
  const double k_grid = pt.k * lambda;  // wave number in 1/(z/L) units
  std::complex<double> sum{0.0, 0.0};
  for (long long y2 = -y2_max; y2 <= y2_max; y2 += 2) {
    const long long ia = (m2 - y2) / 2;
    const long long ib = (m2 + y2) / 2;
    const double y = 0.5 * h * static_cast<double>(y2);
    sum += std::polar(1.0, -2.0 * k_grid * y) * std::conj(psi_a[ia]) * psi_b[ib];
  }
  return sum * h;
}

}  // namespace catbell
