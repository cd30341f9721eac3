#pragma once

#include <Eigen/Dense>

namespace riclink {

// Quantile of the standard normal distribution, accurate to ~1e-13 over
// p in (0, 1) after one Halley refinement of Acklam's approximation.
double normal_quantile(double p);

// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order;
// thread-safe.
struct GaussLegendre {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};
const GaussLegendre& gauss_legendre(int order);

// Integrates f over [a, b] with an n-point Gauss-Legendre rule.
template <typename F>
double integrate_gl(F&& f, double a, double b, int order) {
  const GaussLegendre& gl = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (int i = 0; i < gl.nodes.size(); ++i)
    acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return half * acc;
}

}  // namespace riclink
