#include "catbell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catbell/errors.hpp"

namespace catbell {

namespace {
bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Wave numbers occupied by the packet: k0 plus a generous spectral margin.
double occupied_k(const SystemConfig& cfg) {
  const double sigma_k = 1.0 / (2.0 * cfg.alpha() * cfg.lambda());
  return cfg.k0() + 8.0 * sigma_k;
}
}  // namespace

void Grid::validate() const {
  if (!(z_max > z_min) || !std::isfinite(z_min) || !std::isfinite(z_max)) {
    throw ConfigError("grid extent must be finite with z_max > z_min");
  }
  if (!is_pow2(n_points) || n_points < 8) {
    throw ConfigError("grid n_points must be a power of two >= 8");
  }
}

Grid Grid::default_for(const SystemConfig& cfg, double tau, int n_points) {
  const double w = width_at(cfg, tau);
  const double travelled = drift(cfg, tau);
  const double pad = 10.0 * w + 0.5;
  // Left edge: initial position, or the entry-edge reflection that travels
  // backwards for the remainder of the run, whichever is further out.
  const double reflected = cfg.z0() - travelled - 2.0;
  Grid g;
  g.z_min = std::min(-cfg.z0(), reflected) - pad;
  g.z_max = -cfg.z0() + travelled + separation_d(cfg) / 2.0 + pad;
  if (n_points > 0) {
    g.n_points = n_points;
  } else {
    const double h_alpha = cfg.alpha() / 16.0;
    const double h_wave = 2.0 * std::numbers::pi / (8.0 * occupied_k(cfg) * cfg.lambda());
    const double h = std::min(h_alpha, h_wave);
    g.n_points = std::max(4096, next_pow2(static_cast<int>(std::ceil((g.z_max - g.z_min) / h))));
  }
  return g;
}

double Grid::points_per_alpha(const SystemConfig& cfg) const {
  return cfg.alpha() / spacing();
}

double Grid::points_per_wavelength(const SystemConfig& cfg) const {
  const double lambda_min = 2.0 * std::numbers::pi / (occupied_k(cfg) * cfg.lambda());
  return lambda_min / spacing();
}

double Grid::snap_half(double z) const {
  const double h = spacing();
  return z_min + 0.5 * h * static_cast<double>(std::llround(2.0 * (z - z_min) / h));
}

double grid_norm(const Grid& grid, std::span<const std::complex<double>> psi) {
  double s = 0.0;
  for (const auto& v : psi) s += std::norm(v);
  return s * grid.spacing();
}

double boundary_mass(const Grid& grid, std::span<const std::complex<double>> psi,
                     int edge_cells) {
  const int n = static_cast<int>(psi.size());
  const int m = std::min(edge_cells, n / 2);
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += std::norm(psi[i]) + std::norm(psi[n - 1 - i]);
  return s * grid.spacing();
}

double windowed_centroid(const Grid& grid, std::span<const std::complex<double>> psi,
                         double half_width) {
  const int n = static_cast<int>(psi.size());
  int peak = 0;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::norm(psi[i]);
    if (d > best) {
      best = d;
      peak = i;
    }
  }
  const int span_cells = std::max(1, static_cast<int>(half_width / grid.spacing()));
  const int lo = std::max(0, peak - span_cells);
  const int hi = std::min(n - 1, peak + span_cells);
  double mass = 0.0, moment = 0.0;
  for (int i = lo; i <= hi; ++i) {
    const double d = std::norm(psi[i]);
    mass += d;
    moment += d * grid.z(i);
  }
  return moment / mass;
}

double fidelity(const Grid& /*grid*/, std::span<const std::complex<double>> a,
                std::span<const std::complex<double>> b) {
  std::complex<double> overlap{0.0, 0.0};
  double na = 0.0, nb = 0.0;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) {
    overlap += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  return std::norm(overlap) / (na * nb);
}

}  // namespace catbell
