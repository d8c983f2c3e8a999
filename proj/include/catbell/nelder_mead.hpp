#pragma once

#include <functional>
#include <span>
#include <vector>

namespace catbell {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  int max_iterations = 100000;
  double diameter_tolerance = 1e-8;  // max vertex distance from the best vertex
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Downhill simplex maximization.  The objective may return -inf outside its
/// feasible region; the simplex contracts away from it.
NelderMeadResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, std::span<const double> initial_step,
    const NelderMeadOptions& options = {});

}  // namespace catbell
