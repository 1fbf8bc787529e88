#pragma once

#include "wcs/bundle.hpp"
#include "wcs/chart.hpp"
#include "wcs/tensor.hpp"

namespace wcs {

// Frame components of the Pontryagin-type form
//   p̃_k(Ω) = (−1)^k / [(2k)!(2π)^{2k}] · Tr(Ω^{2k}),
// a fully antisymmetric rank-4k array over the orthonormal frame indices.
struct PontryaginForm {
  int k = 0;
  DenseTensor value;
};

// Tr(Ω^{2k}) evaluated on the frame tuple (e_{a₀}, …, e_{a_{4k−1}}), where
// Ω is the curvature 2-form matrix of the framed curvature tensor r_hat
// (components r_hat(a, b, u, v) in an orthonormal frame).
double omega_trace_power(const DenseTensor& r_hat, int k,
                         const std::vector<int>& idx, int threads = 1);

PontryaginForm pontryagin_form(const CurvatureData& cd, int k);

struct Prop52Report {
  double lhs = 0.0;   // scaled p²-coefficient of the fiber-led density chain
  double rhs = 0.0;   // −2(2k+1)·Tr(Ω^{2k})(e₁..e_{4k})
  double diff = 0.0;  // |lhs − rhs|
  double beta_class = 0.0;         // p²-part of the non-fiber-led chain terms
  double definitional_diff = 0.0;  // |2(2k+1)Tr − (−1)^k(4k+2)(2π)^{2k}(2k)!p̃|
  double nabla_j_max = 0.0;
};

// Kähler p²-coefficient identity: the p²-grade of the density chain equals a
// multiple of Tr(Ω^{2k}) of the base curvature. The two sides are computed
// by independent code paths (graded permutation chain vs direct trace). The
// constant carries the opposite sign from the source display because this
// codebase's curvature sign convention enters the left side an odd number of
// times (2k+1 factors) and the right side an even number (2k factors).
Prop52Report prop52_check(const ChartMetric& m, const std::vector<double>& x,
                          int k, int threads = 1);

}  // namespace wcs
