#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "catbell/chsh.hpp"
#include "catbell/model.hpp"

namespace catbell {

/// Inclusive linear range with `count` samples (count == 1 yields start).
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  double value(int i) const {
    return count < 2 ? start : start + (stop - start) * i / static_cast<double>(count - 1);
  }
};

/// Correlation surface over a (z, k) window at fixed beta; row-major, z outer.
struct WignerMap {
  Range z;
  Range k;
  double beta = 0.0;
  std::vector<double> values;

  double at(int iz, int ik) const { return values[static_cast<std::size_t>(iz) * k.count + ik]; }
};

WignerMap wigner_map(const SystemConfig& cfg, double tau, double beta, Range z_range,
                     Range k_range);
WignerMap wigner_map_serial(const SystemConfig& cfg, double tau, double beta, Range z_range,
                            Range k_range);

/// Fixed parameters of a CHSH scan: first atomic setting and first phase.
struct ChshScanFixed {
  double z = 0.0;
  double k = 0.0;
  double k_prime = 0.0;
  double beta = 0.0;
};

/// CHSH sum over a (z', beta') window; row-major, z' outer.
struct ChshScan {
  Range z_prime;
  Range beta_prime;
  ChshScanFixed fixed;
  std::vector<double> values;
  double max_value = 0.0;
  int max_iz = 0;
  int max_ib = 0;
  long long cells_above_2 = 0;

  double at(int iz, int ib) const {
    return values[static_cast<std::size_t>(iz) * beta_prime.count + ib];
  }
};

ChshScan chsh_scan(const SystemConfig& cfg, double tau, const ChshScanFixed& fixed, Range zp_range,
                   Range bp_range);
ChshScan chsh_scan_serial(const SystemConfig& cfg, double tau, const ChshScanFixed& fixed,
                          Range zp_range, Range bp_range);

/// Largest |CHSH sum| over n random settings drawn around the packet support
/// of each config (round-robin).  Pure function of the seed: each draw uses
/// its own counter-based stream, so the parallel and serial versions agree
/// bit for bit.
struct TsirelsonSample {
  double max_value = 0.0;
  double max_abs = 0.0;
  long long draws = 0;
};

TsirelsonSample tsirelson_sample(std::span<const SystemConfig> configs, long long n,
                                 std::uint64_t seed);
TsirelsonSample tsirelson_sample_serial(std::span<const SystemConfig> configs, long long n,
                                        std::uint64_t seed);

/// One uniformly distributed double in [0,1) per (seed, index, slot) triple.
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t slot);

}  // namespace catbell
