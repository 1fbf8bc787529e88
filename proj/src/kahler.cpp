#include "wcs/kahler.hpp"

#include <cmath>

#include "wcs/chain.hpp"
#include "wcs/errors.hpp"
#include "wcs/wcs_engine.hpp"

namespace wcs {

double omega_trace_power(const DenseTensor& r_hat, int k,
                         const std::vector<int>& idx, int threads) {
  if (k < 1) throw InputError("k must be positive");
  const int D = 4 * k;
  if (static_cast<int>(idx.size()) != D)
    throw DimensionError("expected a 4k-index frame tuple");
  const int d = r_hat.dims()[0];
  for (int a : idx)
    if (a < 0 || a >= d) throw DimensionError("frame index out of range");

  // (Ω^{2k})(v₁..v_{4k}) expands the wedge of 2k two-forms: a signed sum
  // over 𝔖_{4k} with one factor 1/2 per two-form.
  auto term = [&](const std::vector<int>& sigma) -> double {
    Mat<double> m = Mat<double>::identity(d);
    for (int f = 0; f < 2 * k; ++f) {
      const int a = idx[static_cast<size_t>(sigma[static_cast<size_t>(2 * f)])];
      const int b =
          idx[static_cast<size_t>(sigma[static_cast<size_t>(2 * f + 1)])];
      Mat<double> omega(d);
      for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) omega(u, v) = r_hat(a, b, v, u);
      m = omega * m;
    }
    double tr = 0.0;
    for (int i = 0; i < d; ++i) tr += m(i, i);
    return tr;
  };
  const unsigned mask = (1u << (2 * k)) - 1u;
  const double sum = signed_permutation_sum<double>(D, term, mask, threads).value;
  return sum / std::pow(2.0, 2 * k);
}

namespace {

PontryaginForm pontryagin_from_frame(const DenseTensor& r_hat, int k) {
  const int d = r_hat.dims()[0];
  const int rank = 4 * k;
  if (d < rank) throw DimensionError("base dimension must be at least 4k");
  const double pi = std::acos(-1.0);
  const double cp = ((k % 2 == 0) ? 1.0 : -1.0) /
                    (std::tgamma(2.0 * k + 1.0) * std::pow(2.0 * pi, 2 * k));

  PontryaginForm out;
  out.k = k;
  out.value = DenseTensor(std::vector<int>(static_cast<size_t>(rank), d));
  std::vector<int> idx(static_cast<size_t>(rank), 0);
  while (true) {
    bool repeated = false;
    for (int s = 0; s < rank && !repeated; ++s)
      for (int t = s + 1; t < rank; ++t)
        if (idx[static_cast<size_t>(s)] == idx[static_cast<size_t>(t)]) {
          repeated = true;
          break;
        }
    out.value.at(idx) =
        repeated ? 0.0 : cp * omega_trace_power(r_hat, k, idx);
    int s = rank - 1;
    while (s >= 0 && ++idx[static_cast<size_t>(s)] == d) {
      idx[static_cast<size_t>(s)] = 0;
      --s;
    }
    if (s < 0) break;
  }
  return out;
}

}  // namespace

PontryaginForm pontryagin_form(const CurvatureData& cd, int k) {
  Mat<double> e = orthonormal_frame(cd.g);
  DenseTensor r_hat = frame_curvature(cd.riemann_low, e);
  return pontryagin_from_frame(r_hat, k);
}

Prop52Report prop52_check(const ChartMetric& m, const std::vector<double>& x,
                          int k, int threads) {
  if (k < 1) throw InputError("k must be positive");
  if (m.dim != 4 * k)
    throw DimensionError("prop52 check requires base dimension 4k");
  CompatibleGeometry cg = compatible_geometry(m, x);

  Prop52Report rep;
  rep.nabla_j_max = cg.nabla_j.max_abs();
  if (rep.nabla_j_max > 1e-8)
    throw FrameError("metric is not Kahler: nabla J exceeds the gate");

  BundleCurvature bc = bar_curvature(cg, x);
  DensitySplit split = wcs_density_split(bc, threads);
  const double prefactor = (2.0 * k + 1.0) / std::pow(2.0, 2 * k - 1);
  rep.lhs = prefactor * split.fiber_part.coeff(2);
  rep.beta_class = split.other_part.coeff(2);

  DenseTensor r_hat = frame_curvature(cg.curv_tilde.riemann_low, bc.frame);
  std::vector<int> idx(static_cast<size_t>(4 * k));
  for (int i = 0; i < 4 * k; ++i) idx[static_cast<size_t>(i)] = i;
  const double trace = omega_trace_power(r_hat, k, idx, threads);
  rep.rhs = -2.0 * (2.0 * k + 1.0) * trace;
  rep.diff = std::abs(rep.lhs - rep.rhs);

  // Definitional rearrangement of the Pontryagin normalization; exact up to
  // rounding in the constants.
  const double pi = std::acos(-1.0);
  const double p_tilde = (((k % 2 == 0) ? 1.0 : -1.0) /
                          (std::tgamma(2.0 * k + 1.0) *
                           std::pow(2.0 * pi, 2 * k))) *
                         trace;
  const double def_lhs = 2.0 * (2.0 * k + 1.0) * trace;
  const double def_rhs = ((k % 2 == 0) ? 1.0 : -1.0) * (4.0 * k + 2.0) *
                         std::pow(2.0 * pi, 2 * k) *
                         std::tgamma(2.0 * k + 1.0) * p_tilde;
  rep.definitional_diff = std::abs(def_lhs - def_rhs);
  return rep;
}

}  // namespace wcs
