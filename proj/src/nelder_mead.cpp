#include "catbell/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace catbell {

NelderMeadResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, std::span<const double> initial_step,
    const NelderMeadOptions& opt) {
  const int dim = static_cast<int>(start.size());
  const int nv = dim + 1;

  std::vector<std::vector<double>> vertex(nv, std::vector<double>(start.begin(), start.end()));
  for (int j = 0; j < dim; ++j) vertex[j + 1][j] += initial_step[j];
  std::vector<double> value(nv);
  for (int v = 0; v < nv; ++v) value[v] = objective(vertex[v]);

  std::vector<int> order(nv);
  std::vector<double> centroid(dim), candidate(dim);

  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value[a] > value[b]; });
  };
  auto diameter = [&] {
    const auto& best = vertex[order[0]];
    double dmax = 0.0;
    for (int v = 0; v < nv; ++v) {
      double d2 = 0.0;
      for (int j = 0; j < dim; ++j) {
        const double dj = vertex[v][j] - best[j];
        d2 += dj * dj;
      }
      dmax = std::max(dmax, d2);
    }
    return std::sqrt(dmax);
  };

  NelderMeadResult result;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    sort_vertices();
    if (diameter() <= opt.diameter_tolerance) {
      result.converged = true;
      break;
    }
    const int worst = order[nv - 1];
    const int second_worst = order[nv - 2];
    const int best = order[0];

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int r = 0; r + 1 < nv; ++r) {
      for (int j = 0; j < dim; ++j) centroid[j] += vertex[order[r]][j];
    }
    for (double& c : centroid) c /= dim;

    auto blend = [&](double coeff) {
      for (int j = 0; j < dim; ++j) {
        candidate[j] = centroid[j] + coeff * (centroid[j] - vertex[worst][j]);
      }
      return objective(candidate);
    };

    const double f_reflect = blend(opt.reflection);
    if (f_reflect > value[best]) {
      std::vector<double> reflected = candidate;
      const double f_expand = blend(opt.expansion);
      if (f_expand > f_reflect) {
        vertex[worst] = candidate;
        value[worst] = f_expand;
      } else {
        vertex[worst] = std::move(reflected);
        value[worst] = f_reflect;
      }
    } else if (f_reflect > value[second_worst]) {
      vertex[worst] = candidate;
      value[worst] = f_reflect;
    } else {
      const bool outside = f_reflect > value[worst];
      const double f_contract =
          outside ? blend(opt.reflection * opt.contraction) : blend(-opt.contraction);
      if (f_contract > (outside ? f_reflect : value[worst])) {
        vertex[worst] = candidate;
        value[worst] = f_contract;
      } else {
        for (int v = 0; v < nv; ++v) {
          if (v == best) continue;
          for (int j = 0; j < dim; ++j) {
            vertex[v][j] = vertex[best][j] + opt.shrink * (vertex[v][j] - vertex[best][j]);
          }
          value[v] = objective(vertex[v]);
        }
      }
    }
  }
  sort_vertices();
  result.point = vertex[order[0]];
  result.value = value[order[0]];
  result.iterations = iter;
  return result;
}

}  // namespace catbell
