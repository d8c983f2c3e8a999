#include "catbell/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "catbell/errors.hpp"

namespace catbell {

namespace {

void require_post_transit(const SystemConfig& cfg, double tau) {
  if (tau + 1e-9 < transit_time(cfg)) {
    throw ValidityError("scan requires t >= T");
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

WignerMap wigner_map_impl(const SystemConfig& cfg, double tau, double beta, Range zr, Range kr,
                          bool parallel) {
  cfg.validate();
  require_post_transit(cfg, tau);
  WignerMap map;
  map.z = zr;
  map.k = kr;
  map.beta = beta;
  map.values.resize(static_cast<std::size_t>(zr.count) * kr.count);
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
  for (int iz = 0; iz < zr.count; ++iz) {
    for (int ik = 0; ik < kr.count; ++ik) {
      map.values[static_cast<std::size_t>(iz) * kr.count + ik] =
          cat_quasiprobability({zr.value(iz), kr.value(ik)}, tau, beta, cfg);
    }
  }
  return map;
}

ChshScan chsh_scan_impl(const SystemConfig& cfg, double tau, const ChshScanFixed& fixed,
                        Range zpr, Range bpr, bool parallel) {
  cfg.validate();
  require_post_transit(cfg, tau);
  ChshScan scan;
  scan.z_prime = zpr;
  scan.beta_prime = bpr;
  scan.fixed = fixed;
  scan.values.resize(static_cast<std::size_t>(zpr.count) * bpr.count);

  const AtomSetting a{{fixed.z, fixed.k}};
  const double c_a_beta = correlation(a, FieldSetting{fixed.beta}, tau, cfg);
  // Per-cell sum = C(a,beta) + C(a,beta') + C(a',beta) - C(a',beta').
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
  for (int iz = 0; iz < zpr.count; ++iz) {
    for (int ib = 0; ib < bpr.count; ++ib) {
      const AtomSetting ap{{zpr.value(iz), fixed.k_prime}};
      const double bp = bpr.value(ib);
      const double v = c_a_beta + correlation(a, FieldSetting{bp}, tau, cfg) +
                       correlation(ap, FieldSetting{fixed.beta}, tau, cfg) -
                       correlation(ap, FieldSetting{bp}, tau, cfg);
      scan.values[static_cast<std::size_t>(iz) * bpr.count + ib] = v;
    }
  }

  // Deterministic reduction in row-major order.
  scan.max_value = scan.values[0];
  for (int iz = 0; iz < zpr.count; ++iz) {
    for (int ib = 0; ib < bpr.count; ++ib) {
      const double v = scan.at(iz, ib);
      if (v > scan.max_value) {
        scan.max_value = v;
        scan.max_iz = iz;
        scan.max_ib = ib;
      }
      if (v > 2.0) ++scan.cells_above_2;
    }
  }
  return scan;
}

struct DrawnSetting {
  ChshSetting setting;
  int config_index;
};

DrawnSetting draw_setting(std::span<const SystemConfig> configs, std::uint64_t seed,
                          std::uint64_t index) {
  const int ci = static_cast<int>(index % configs.size());
  const SystemConfig& cfg = configs[ci];
  const double tau = cfg.tau();
  const double sigma_k = 1.0 / (2.0 * cfg.alpha() * cfg.lambda());
  const double d = separation_d(cfg);

  auto u = [&](std::uint64_t slot) { return counter_uniform(seed, index, slot); };
  auto draw_point = [&](std::uint64_t base) {
    const double k = cfg.k0() + 4.0 * sigma_k * (2.0 * u(base) - 1.0);
    const double center = -cfg.z0() + 2.0 * k * tau / cfg.lambda();
    const double z = center + (d + 6.0 * cfg.alpha()) * (2.0 * u(base + 1) - 1.0);
    return PhasePoint{z, k};
  };
  DrawnSetting out;
  out.config_index = ci;
  out.setting.a = AtomSetting{draw_point(0)};
  out.setting.a_prime = AtomSetting{draw_point(2)};
  out.setting.beta = FieldSetting{2.0 * std::numbers::pi * u(4)};
  out.setting.beta_prime = FieldSetting{2.0 * std::numbers::pi * u(5)};
  return out;
}

TsirelsonSample tsirelson_impl(std::span<const SystemConfig> configs, long long n,
                               std::uint64_t seed, bool parallel) {
  if (configs.empty()) throw ConfigError("tsirelson_sample: need at least one config");
  for (const auto& cfg : configs) {
    cfg.validate();
    require_post_transit(cfg, cfg.tau());
  }
  double max_value = -std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_value, max_abs) if (parallel)
  for (long long i = 0; i < n; ++i) {
    const DrawnSetting ds = draw_setting(configs, seed, static_cast<std::uint64_t>(i));
    const SystemConfig& cfg = configs[ds.config_index];
    const double v = chsh_sum(ds.setting, cfg.tau(), cfg);
    max_value = std::max(max_value, v);
    max_abs = std::max(max_abs, std::abs(v));
  }
  return {max_value, max_abs, n};
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  const std::uint64_t bits = mix64(seed ^ mix64(index * 6364136223846793005ULL + slot));
  return (bits >> 11) * 0x1.0p-53;
}

WignerMap wigner_map(const SystemConfig& cfg, double tau, double beta, Range zr, Range kr) {
  return wigner_map_impl(cfg, tau, beta, zr, kr, true);
}

WignerMap wigner_map_serial(const SystemConfig& cfg, double tau, double beta, Range zr,
                            Range kr) {
  return wigner_map_impl(cfg, tau, beta, zr, kr, false);
}

ChshScan chsh_scan(const SystemConfig& cfg, double tau, const ChshScanFixed& fixed, Range zpr,
                   Range bpr) {
  return chsh_scan_impl(cfg, tau, fixed, zpr, bpr, true);
}

ChshScan chsh_scan_serial(const SystemConfig& cfg, double tau, const ChshScanFixed& fixed,
                          Range zpr, Range bpr) {
  return chsh_scan_impl(cfg, tau, fixed, zpr, bpr, false);
}

TsirelsonSample tsirelson_sample(std::span<const SystemConfig> configs, long long n,
                                 std::uint64_t seed) {
  return tsirelson_impl(configs, n, seed, true);
}

TsirelsonSample tsirelson_sample_serial(std::span<const SystemConfig> configs, long long n,
                                        std::uint64_t seed) {
  return tsirelson_impl(configs, n, seed, false);
}

}  // namespace catbell
