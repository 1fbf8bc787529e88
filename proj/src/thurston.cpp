#include "wcs/thurston.hpp"

#include <cmath>

#include "wcs/chain.hpp"
#include "wcs/wcs_engine.hpp"

namespace wcs {

double thurston_beta(double theta2) {
  return 1.0 + theta2 - theta2 * theta2;
}

ConnectionPotential thurston_potential(double kappa) {
  if (kappa == 0.0) throw InputError("kappa must be nonzero");
  return make_potential(4, [kappa](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> eta(4, T{0.0});
    eta[1] = x[0];
    eta[3] = T{kappa} * x[2];
    return eta;
  });
}

double thurston_coordinate_chain(double p, double kappa,
                                 const std::vector<double>& x5, int threads) {
  if (p == 0.0) throw InputError("bundle parameter p must be nonzero");
  if (x5.size() != 5) throw DimensionError("expected a 5D coordinate point");
  ChartMetric base = thurston_chart(kappa);
  ChartMetric bundle = make_bundle_metric(base, thurston_potential(kappa), p);
  CurvatureData cd = riemann(bundle, x5);
  const int D = 5;
  std::vector<Mat<double>> first(D, Mat<double>(D));
  std::vector<Mat<double>> pairs(static_cast<size_t>(D) * D, Mat<double>(D));
  for (int s = 0; s < D; ++s)
    for (int l = 0; l < D; ++l)
      for (int r = 0; r < D; ++r)
        first[static_cast<size_t>(s)](l, r) = cd.riemann_mixed(s, l, 0, r);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
          pairs[static_cast<size_t>(i) * D + j](a, b) =
              cd.riemann_mixed(i, j, a, b);
  return signed_chain_sum(first, pairs, threads).value;
}

double thurston_integrand(double p, double kappa, double theta2, int threads) {
  if (kappa == 0.0) throw InputError("kappa must be nonzero");
  std::vector<double> x5{0.0, 0.0, theta2, 0.0, 0.0};
  return thurston_coordinate_chain(p, kappa, x5, threads) / kappa;
}

double thurston_closed_integrand(double p, double theta2) {
  const double b = thurston_beta(theta2);
  const double b2 = 1.0 / (b * b);
  const double p2 = p * p;
  return p2 / 16.0 * (3072.0 * p2 * p2 - 640.0 * p2 * b2 - 25.0 * b2 * b2);
}

double acoth(double x) { return 0.5 * std::log((x + 1.0) / (x - 1.0)); }

double beta_integral_2() {
  const double s5 = std::sqrt(5.0);
  return (2.0 / 25.0) * (5.0 + 4.0 * s5 * acoth(s5));
}

double beta_integral_4() {
  const double s5 = std::sqrt(5.0);
  return (16.0 / 375.0) * (10.0 + 3.0 * s5 * acoth(s5));
}

ThurstonIntegral thurston_integral(double p, double kappa,
                                   const QuadratureRule& rule, int threads) {
  if (p == 0.0)
    throw InputError("p must be nonzero (the p = 0 bundle is a product)");
  if (kappa == 0.0) throw InputError("kappa must be nonzero");
  const double ap = std::abs(p);

  ThurstonIntegral out;
  const double pi = std::acos(-1.0);
  out.prefactor = 3.0 * kappa * pi * pi * std::pow(ap, 1.5) / 8.0;
  // inner integrand recovered from the chain: (16/p²)·(chain/κ)
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double chain = thurston_integrand(ap, kappa, t, threads);
    const double closed = thurston_closed_integrand(ap, t);
    out.max_pointwise_diff =
        std::max(out.max_pointwise_diff, std::abs(chain - closed));
    out.inner += rule.weights[i] * (16.0 / (ap * ap)) * chain;
  }
  out.value = out.prefactor * out.inner;
  return out;
}

std::vector<NodeRow> thurston_node_sweep(double p, double kappa,
                                         const QuadratureRule& rule,
                                         int threads) {
  if (p == 0.0) throw InputError("p must be nonzero");
  const double ap = std::abs(p);
  std::vector<NodeRow> rows;
  rows.reserve(rule.nodes.size());
  for (double t : rule.nodes) {
    NodeRow r;
    r.theta2 = t;
    r.beta = thurston_beta(t);
    r.integrand = thurston_integrand(ap, kappa, t, threads);
    r.closed_form = thurston_closed_integrand(ap, t);
    r.abs_diff = std::abs(r.integrand - r.closed_form);
    rows.push_back(r);
  }
  return rows;
}

NonvanishingResult nonvanishing_check(double p) {
  const double s5 = std::sqrt(5.0);
  const double p2 = p * p;
  const double value = 10.0 * (-1.0 - 24.0 * p2 + 288.0 * p2 * p2) -
                       3.0 * s5 * (1.0 + 64.0 * p2) * acoth(s5);
  return {value, std::abs(value) > 1e-6};
}

std::vector<std::complex<double>> quartic_roots() {
  // E(p) = 0 as a quadratic in q = p²:
  // 2880 q² − (240 + 192√5 c) q − (10 + 3√5 c) = 0, c = acoth(√5)
  const double s5 = std::sqrt(5.0);
  const double c = acoth(s5);
  const double a = 2880.0;
  const double b = -(240.0 + 192.0 * s5 * c);
  const double d = -(10.0 + 3.0 * s5 * c);
  const double disc = std::sqrt(b * b - 4.0 * a * d);
  const double q1 = (-b + disc) / (2.0 * a);  // positive
  const double q2 = (-b - disc) / (2.0 * a);  // negative
  const double r = std::sqrt(q1);
  const double m = std::sqrt(-q2);
  return {{r, 0.0}, {-r, 0.0}, {0.0, m}, {0.0, -m}};
}

}  // namespace wcs
