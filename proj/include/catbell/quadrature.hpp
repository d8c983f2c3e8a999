#pragma once

#include <functional>
#include <vector>

namespace catbell {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int n);

/// Fixed quadrature rule used for normalization and moment checks:
/// Gauss-Legendre with `n` nodes mapped onto [lo, hi].
double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int n = 2000);

/// Composite trapezoid over uniformly sampled values.
double trapezoid(const std::vector<double>& values, double spacing);

}  // namespace catbell
