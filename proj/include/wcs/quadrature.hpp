#pragma once

#include <cmath>
#include <vector>

#include "wcs/errors.hpp"

namespace wcs {

struct QuadratureRule {
  std::vector<double> nodes;    // in (0, 1)
  std::vector<double> weights;  // sum to 1
};

// Gauss-Legendre rule of order n mapped to [0, 1]. Nodes are the roots of
// P_n found by Newton iteration from the Chebyshev initial guesses; the
// derivative comes from the standard recurrence.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 2) throw InputError("quadrature order must be at least 2");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // map from [-1, 1] to [0, 1]; the cosine guess descends, so flip
    rule.nodes[static_cast<size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    rule.weights[static_cast<size_t>(n - 1 - i)] =
        1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

}  // namespace wcs
