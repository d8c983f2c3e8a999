#pragma once

#include <cstdint>

#include "catbell/chsh.hpp"

namespace catbell {

enum class OptimizeMode {
  fixed,   // optimize (x, x', kappa, kappa') with (d, kappa0) set by the scenario
  design,  // optimize all six scaled coordinates
};

struct OptimizeBounds {
  double x_abs = 3.0;      // |x|, |x'| box
  double kappa_abs = 3.0;  // |kappa|, |kappa'| box
  double d_max = 3.0;      // d in (0, d_max]; design mode only
  // kappa0 is searched over (0, pi/(2 d)], one period of the interference
  // phase, which contains exactly one maximizer of |sin(2 d kappa0)|.
};

struct OptimumReport {
  double best_value = 0.0;
  ScaledChshPoint best_point;
  double beta_star = 0.0;
  double beta_prime_star = 0.0;
  int iterations = 0;
  int starts = 0;
  bool converged = false;
};

/// Multi-start Nelder-Mead maximization of chsh_max_closed_form.  Start points
/// come from a Halton set rotated by the seed, so the result is a pure
/// function of (cfg, tau, mode, starts, seed, bounds).  Ties between the
/// mirror optima (x, x') <-> (-x, -x') are broken toward x > 0.
OptimumReport optimize_chsh(const SystemConfig& cfg, double tau, OptimizeMode mode, int starts,
                            std::uint64_t seed, const OptimizeBounds& bounds = {});

/// Single-threaded reference of the same computation.
OptimumReport optimize_chsh_serial(const SystemConfig& cfg, double tau, OptimizeMode mode,
                                   int starts, std::uint64_t seed,
                                   const OptimizeBounds& bounds = {});

}  // namespace catbell
