#include "wcs/wcs_engine.hpp"

#include <cmath>

namespace wcs {

namespace {

void check_chain_shape(const BundleCurvature& bc) {
  if ((bc.D - 1) % 4 != 0 || bc.D < 5)
    throw DimensionError("density requires bundle dimension 4n+1");
  if (bc.gram_deviation > 1e-8)
    throw FrameError("bundle frame is not orthonormal");
}

// Chain matrices with entries of scalar type S drawn from a rank-4
// component array via an entry functor.
template <class S, class Entry>
void build_chain_matrices(int D, Entry entry, std::vector<Mat<S>>& first,
                          std::vector<Mat<S>>& pairs) {
  first.assign(static_cast<size_t>(D), Mat<S>(D));
  pairs.assign(static_cast<size_t>(D) * D, Mat<S>(D));
  for (int s = 0; s < D; ++s)
    for (int l = 0; l < D; ++l)
      for (int r = 0; r < D; ++r) first[static_cast<size_t>(s)](l, r) = entry(s, l, 0, r);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
          pairs[static_cast<size_t>(i) * D + j](a, b) = entry(i, j, a, b);
}

}  // namespace

WCSDensity wcs_density(const BundleCurvature& bc, int threads) {
  check_chain_shape(bc);
  const int D = bc.D;
  const int n = (D - 1) / 4;
  const int trunc = 4 * n + 2;

  std::vector<Mat<PPoly>> first, pairs;
  build_chain_matrices<PPoly>(
      D,
      [&](int i, int j, int k, int l) {
        return bc.components.entry_poly({i, j, k, l}, trunc);
      },
      first, pairs);

  WCSDensity out;
  out.D = D;
  out.n = n;
  out.poly = signed_chain_sum(first, pairs, threads).value;
  out.poly.normalize(1e-12);
  out.prefactor = (2.0 * n + 1.0) / std::pow(2.0, 2 * n - 1);
  return out;
}

double wcs_density_at(const BundleCurvature& bc, double p, int threads) {
  check_chain_shape(bc);
  const int D = bc.D;
  DenseTensor comp = bc.components.eval(p);
  std::vector<Mat<double>> first, pairs;
  build_chain_matrices<double>(
      D, [&](int i, int j, int k, int l) { return comp(i, j, k, l); }, first,
      pairs);
  return signed_chain_sum(first, pairs, threads).value;
}

DensitySplit wcs_density_split(const BundleCurvature& bc, int threads) {
  check_chain_shape(bc);
  const int D = bc.D;
  const int n = (D - 1) / 4;
  std::vector<Mat<PPoly>> first, pairs;
  build_chain_matrices<PPoly>(
      D,
      [&](int i, int j, int k, int l) {
        return bc.components.entry_poly({i, j, k, l}, 4 * n + 2);
      },
      first, pairs);

  auto restricted = [&](bool fiber_leading) {
    auto term = [&](const std::vector<int>& sigma) -> PPoly {
      if ((sigma[0] == 0) != fiber_leading) return PPoly{};
      Mat<PPoly> m = first[static_cast<size_t>(sigma[0])];
      for (int k = 1; k + 1 < D; k += 2)
        m = pairs[static_cast<size_t>(sigma[static_cast<size_t>(k)]) * D +
                  sigma[static_cast<size_t>(k + 1)]] *
            m;
      PPoly tr;
      for (int i = 0; i < D; ++i) tr += m(i, i);
      return tr;
    };
    const unsigned mask = (1u << ((D - 1) / 2)) - 1u;
    PPoly v = signed_permutation_sum<PPoly>(D, term, mask, threads).value;
    v.normalize(1e-12);
    return v;
  };

  DensitySplit out;
  out.fiber_part = restricted(true);
  out.other_part = restricted(false);
  return out;
}

ChainSumResult<double> top_coefficient_brute(const Mat<double>& g,
                                             const Mat<double>& j_low,
                                             int threads) {
  if (g.n % 2 != 0) throw DimensionError("base dimension must be even");
  BundleCurvature bc = bundle_from_constant(g, j_low);
  const DenseTensor* g2 = bc.components.find_grade(2);
  std::vector<Mat<double>> first, pairs;
  build_chain_matrices<double>(
      bc.D, [&](int i, int j, int k, int l) { return (*g2)(i, j, k, l); },
      first, pairs);
  return signed_chain_sum(first, pairs, threads);
}

double top_coefficient_closed_form(const Mat<double>& g,
                                   const Mat<double>& j_low) {
  const int d = g.n;
  if (d % 4 != 0) throw DimensionError("closed form requires dimension 4n");
  const int n = d / 4;
  Mat<double> e = orthonormal_frame(g);
  DenseTensor j_hat({d, d});
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double acc = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) acc += e(i, a) * j_low(i, j) * e(j, b);
      j_hat(a, b) = acc;
    }
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (−1)^{n+1}
  return sign * std::pow(2.0, 2 * n + 1) * (2.0 * n + 1.0) *
         pfaffian_sum(j_hat);
}

CancellationReport cancellation_check(const Mat<double>& g,
                                      const Mat<double>& j_low, int threads) {
  const int d = g.n;
  if (d % 2 != 0) throw DimensionError("base dimension must be even");
  const int D = d + 1;
  BundleCurvature bc = bundle_from_constant(g, j_low);
  const DenseTensor& g2 = *bc.components.find_grade(2);

  // Frame components of the lowered J (entries of the grade-2 fiber rows).
  Mat<double> e = orthonormal_frame(g);
  Mat<double> j_hat(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double acc = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) acc += e(i, a) * j_low(i, j) * e(j, b);
      j_hat(a, b) = acc;
    }

  std::vector<Mat<double>> first, pairs;
  build_chain_matrices<double>(
      D, [&](int i, int j, int k, int l) { return g2(i, j, k, l); }, first,
      pairs);

  CancellationReport out;

  // Full form, leading slot fixed to the fiber index.
  {
    auto term = [&](const std::vector<int>& sigma) -> double {
      if (sigma[0] != 0) return 0.0;
      Mat<double> m = first[0];
      for (int k = 1; k + 1 < D; k += 2)
        m = pairs[static_cast<size_t>(sigma[static_cast<size_t>(k)]) * D +
                  sigma[static_cast<size_t>(k + 1)]] *
            m;
      double tr = 0.0;
      for (int i = 0; i < D; ++i) tr += m(i, i);
      return tr;
    };
    const unsigned mask = (1u << (d / 2)) - 1u;
    auto res = signed_permutation_sum<double>(D, term, mask, threads);
    out.full = res.value;
    out.term_scale = res.term_scale;
  }

  // Reduced form: the first two pair factors and the leading −δ collapse to
  // the five-term remainder matrix below; the four dropped terms carry a
  // symmetric metric factor and cancel under single transpositions. The
  // (σ₃,σ₄) pair is no longer antisymmetric here, so it is not pruned.
  {
    auto a1_red = [&](int s1, int s2, int s3, int s4) {
      Mat<double> m(D);
      for (int a3 = 1; a3 < D; ++a3)
        for (int a1 = 1; a1 < D; ++a1) {
          double v = j_hat(s3 - 1, a3 - 1) * (s4 == a1 ? 1.0 : 0.0) +
                     j_hat(s3 - 1, a1 - 1) * (s4 == a3 ? 1.0 : 0.0) +
                     j_hat(s3 - 1, s4 - 1) * (a3 == a1 ? 1.0 : 0.0);
          m(a3, a1) = -4.0 * j_hat(s1 - 1, s2 - 1) * v;
        }
      return m;
    };
    auto term = [&](const std::vector<int>& sigma) -> double {
      if (sigma[0] != 0) return 0.0;
      Mat<double> m = a1_red(sigma[1], sigma[2], sigma[3], sigma[4]);
      for (int k = 5; k + 1 < D; k += 2)
        m = pairs[static_cast<size_t>(sigma[static_cast<size_t>(k)]) * D +
                  sigma[static_cast<size_t>(k + 1)]] *
            m;
      double tr = 0.0;
      for (int i = 0; i < D; ++i) tr += m(i, i);
      return tr;
    };
    unsigned mask = (1u << (d / 2)) - 1u;
    mask &= ~2u;  // keep (σ₃,σ₄) unpruned
    out.reduced =
        -signed_permutation_sum<double>(D, term, mask, threads).value;
  }

  // A single transposition pair of a g-carrying term: the term value is
  // symmetric in (σ₃,σ₄) while the permutation sign flips, so the two
  // contributions cancel exactly.
  {
    std::vector<int> sigma(static_cast<size_t>(D));
    for (int i = 0; i < D; ++i) sigma[static_cast<size_t>(i)] = (i + 1) % D;
    std::vector<int> swapped = sigma;
    std::swap(swapped[3], swapped[4]);
    auto f = [&](const std::vector<int>& s) {
      // symmetric metric factor in slots 3,4 times a J-factor from slots 1,2
      return g(s[3] % d, s[4] % d) * j_hat(s[1] - 1, s[2] - 1);
    };
    out.pair_term = detail::permutation_sign(sigma) * f(sigma) +
                    detail::permutation_sign(swapped) * f(swapped);
  }

  return out;
}

VanishingReport dim_4n_plus_2_vanishing(const Mat<double>& g,
                                        const Mat<double>& j_low,
                                        int threads) {
  if (g.n % 4 != 2)
    throw DimensionError("vanishing check requires dimension 4n+2");
  ChainSumResult<double> r = top_coefficient_brute(g, j_low, threads);
  return {r.value, r.term_scale};
}

Mat<double> normal_j_low(int dim) {
  if (dim % 2 != 0) throw DimensionError("normal form requires even dim");
  Mat<double> j(dim);
  const int h = dim / 2;
  for (int a = 0; a < h; ++a) {
    j(a, a + h) = 1.0;
    j(a + h, a) = -1.0;
  }
  return j;
}

CompatiblePair random_compatible(int dim, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat<double> j0 = normal_j_low(dim);  // equals minus the operator form
  Mat<double> j0_op(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) j0_op(i, j) = -j0(i, j);

  Mat<double> q(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      q(i, j) = (i == j ? 1.0 : 0.0) + 0.3 * u(rng);

  CompatiblePair out;
  out.j_op = inverse(q) * j0_op * q;
  out.g = q.transpose() * q;
  out.j_low = out.j_op.transpose() * out.g;
  return out;
}

}  // namespace wcs
