#include "wcs/bundle.hpp"

#include <cmath>
#include <type_traits>

namespace wcs {

Mat<double> orthonormal_frame(const Mat<double>& g) {
  const int n = g.n;
  Mat<double> e = Mat<double>::identity(n);
  auto dot = [&](int a, int b) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += e(i, a) * g(i, j) * e(j, b);
    return acc;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < a; ++b) {
      const double c = dot(b, a);
      for (int i = 0; i < n; ++i) e(i, a) -= c * e(i, b);
    }
    const double nrm2 = dot(a, a);
    if (nrm2 <= 0.0)
      throw DegeneracyError("metric not positive definite in frame build");
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int i = 0; i < n; ++i) e(i, a) *= inv;
  }
  return e;
}

namespace {

// Populates grade 2 of the graded curvature from the frame components of
// the lowered J (j_hat(a,b) with base-frame indices) into bundle indices.
void assemble_grade2(PGradedTensor& comp, const Mat<double>& j_hat) {
  const int nb = j_hat.n;
  DenseTensor g2(comp.dims());
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nb; ++c)
        for (int d = 0; d < nb; ++d)
          g2(a + 1, b + 1, c + 1, d + 1) =
              -j_hat(b, c) * j_hat(a, d) + j_hat(a, c) * j_hat(b, d) +
              2.0 * j_hat(a, b) * j_hat(c, d);
  for (int a = 1; a <= nb; ++a) {
    g2(a, 0, a, 0) = -1.0;
    g2(0, a, a, 0) = 1.0;
    g2(a, 0, 0, a) = 1.0;
    g2(0, a, 0, a) = -1.0;
  }
  comp.set_grade(2, std::move(g2));
}

double frame_gram_deviation(const Mat<double>& e, const Mat<double>& g) {
  const int n = g.n;
  double dev = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += e(i, a) * g(i, j) * e(j, b);
      dev = std::max(dev, std::abs(acc - (a == b ? 1.0 : 0.0)));
    }
  return dev;
}

}  // namespace

BundleCurvature bar_curvature(const CompatibleGeometry& cg, const Vec& x) {
  const int nb = cg.triple.g_tilde.n;
  const int D = nb + 1;
  BundleCurvature bc;
  bc.base_point = x;
  bc.base_dim = nb;
  bc.D = D;
  bc.frame = orthonormal_frame(cg.triple.g_tilde);
  bc.gram_deviation = frame_gram_deviation(bc.frame, cg.triple.g_tilde);
  bc.components = PGradedTensor({D, D, D, D});

  const Mat<double>& e = bc.frame;

  // grade 0: base curvature in the frame, on horizontal indices
  DenseTensor rhat = frame_curvature(cg.curv_tilde.riemann_low, e);
  DenseTensor g0(bc.components.dims());
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nb; ++c)
        for (int d = 0; d < nb; ++d)
          g0(a + 1, b + 1, c + 1, d + 1) = rhat(a, b, c, d);
  bc.components.set_grade(0, std::move(g0));

  // lowered ∇J in the frame: nhat(a,b,c) = g̃((∇_a J)e_b, e_c)
  DenseTensor nj_low({nb, nb, nb});
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nb; ++k) {
        double acc = 0.0;
        for (int l = 0; l < nb; ++l)
          acc += cg.nabla_j(i, j, l) * cg.triple.g_tilde(l, k);
        nj_low(i, j, k) = acc;
      }
  DenseTensor nhat({nb, nb, nb});
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nb; ++c) {
        double acc = 0.0;
        for (int i = 0; i < nb; ++i)
          for (int j = 0; j < nb; ++j)
            for (int k = 0; k < nb; ++k)
              acc += nj_low(i, j, k) * e(i, a) * e(j, b) * e(k, c);
        nhat(a, b, c) = acc;
      }

  // grade 1: Lemma components (ii)/(iv) and their antisymmetry images
  DenseTensor g1(bc.components.dims());
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nb; ++c) {
        g1(a + 1, 0, b + 1, c + 1) = nhat(a, b, c);
        g1(0, a + 1, b + 1, c + 1) = -nhat(a, b, c);
        g1(a + 1, b + 1, c + 1, 0) = -nhat(a, b, c) + nhat(b, a, c);
        g1(a + 1, b + 1, 0, c + 1) = nhat(a, b, c) - nhat(b, a, c);
      }
  bc.components.set_grade(1, std::move(g1));

  // grade 2: frame components of the lowered J are ω in the frame
  Mat<double> omega(nb);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      double acc = 0.0;
      for (int k = 0; k < nb; ++k)
        acc += cg.triple.j_op(k, i) * cg.triple.g_tilde(k, j);
      omega(i, j) = acc;
    }
  Mat<double> j_hat(nb);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) {
      double acc = 0.0;
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
          acc += e(i, a) * omega(i, j) * e(j, b);
      j_hat(a, b) = acc;
    }
  assemble_grade2(bc.components, j_hat);
  return bc;
}

BundleCurvature bundle_from_constant(const Mat<double>& g,
                                     const Mat<double>& j_low) {
  const int nb = g.n;
  if (j_low.n != nb) throw DimensionError("g and J dimension mismatch");
  BundleCurvature bc;
  bc.base_point = Vec(static_cast<size_t>(nb), 0.0);
  bc.base_dim = nb;
  bc.D = nb + 1;
  bc.frame = orthonormal_frame(g);
  bc.gram_deviation = frame_gram_deviation(bc.frame, g);
  bc.components = PGradedTensor({bc.D, bc.D, bc.D, bc.D});

  Mat<double> j_hat(nb);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) {
      double acc = 0.0;
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
          acc += bc.frame(i, a) * j_low(i, j) * bc.frame(j, b);
      j_hat(a, b) = acc;
    }
  assemble_grade2(bc.components, j_hat);
  return bc;
}

double potential_curl_deviation(const ConnectionPotential& pot,
                                const ChartMetric& base, const Vec& x) {
  const int n = pot.dim;
  Mat<double> w = base.omega(x);
  // d_i eta_j from one hyper-dual sweep per coordinate
  Mat<double> de(n);
  for (int i = 0; i < n; ++i) {
    HVec xh(x.size());
    for (int k = 0; k < n; ++k) xh[static_cast<size_t>(k)] = {x[static_cast<size_t>(k)], 0.0, 0.0, 0.0};
    xh[static_cast<size_t>(i)].d1 = 1.0;
    std::vector<HyperDual> eh = pot.eta_hd(xh);
    for (int j = 0; j < n; ++j) de(i, j) = eh[static_cast<size_t>(j)].d1;
  }
  double dev = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dev = std::max(dev, std::abs(de(i, j) - de(j, i) - w(i, j)));
  return dev;
}

ChartMetric make_bundle_metric(const ChartMetric& base,
                               const ConnectionPotential& pot, double p) {
  if (!base.has_omega())
    throw InputError("bundle metric needs a symplectic base chart");
  const int nb = base.dim;

  auto metric5 = [base, pot, p, nb](const auto& x5) {
    using T = typename std::decay_t<decltype(x5)>::value_type;
    using XVec = std::vector<T>;
    XVec x(x5.begin() + 1, x5.end());
    Mat<T> gt;
    if constexpr (std::is_same_v<T, double>)
      gt = compatible_triple(base.g(x), base.omega(x)).g_tilde;
    else
      gt = compatible_triple(base.g_hd(x), base.omega_hd(x)).g_tilde;
    XVec eta;
    if constexpr (std::is_same_v<T, double>)
      eta = pot.eta(x);
    else
      eta = pot.eta_hd(x);

    // Connection covector in the 5D chart: (1, 2p·eta_1, ..., 2p·eta_nb).
    // The factor 2 converts between the two exterior-derivative conventions:
    // the curvature identities assembled in bar_curvature assume
    // dα(X,Y) = ½(Xα(Y) − Yα(X) − α([X,Y])), while the stored potential
    // satisfies dη = ω in the convention without the ½.
    Mat<T> g5(nb + 1);
    std::vector<T> be(static_cast<size_t>(nb) + 1);
    be[0] = T{1.0};
    for (int i = 0; i < nb; ++i) be[static_cast<size_t>(i) + 1] = T{2.0 * p} * eta[static_cast<size_t>(i)];
    for (int i = 0; i <= nb; ++i)
      for (int j = 0; j <= nb; ++j) {
        T v = be[static_cast<size_t>(i)] * be[static_cast<size_t>(j)];
        if (i > 0 && j > 0) v += gt(i - 1, j - 1);
        g5(i, j) = v;
      }
    return g5;
  };
  return make_chart(nb + 1, metric5);
}

Mat<double> lifted_frame(const Mat<double>& base_frame,
                         const ConnectionPotential& pot, double p,
                         const Vec& x) {
  const int nb = base_frame.n;
  std::vector<double> eta = pot.eta(x);
  Mat<double> f(nb + 1);
  f(0, 0) = 1.0;
  for (int a = 0; a < nb; ++a) {
    double ev = 0.0;
    for (int i = 0; i < nb; ++i) ev += eta[static_cast<size_t>(i)] * base_frame(i, a);
    // horizontal means annihilated by dθ₀ + 2p·eta (see make_bundle_metric)
    f(0, a + 1) = -2.0 * p * ev;
    for (int i = 0; i < nb; ++i) f(i + 1, a + 1) = base_frame(i, a);
  }
  return f;
}

DenseTensor frame_curvature(const DenseTensor& riemann_low,
                            const Mat<double>& f) {
  const int n = f.n;
  if (riemann_low.dims() != std::vector<int>{n, n, n, n})
    throw DimensionError("curvature/frame dimension mismatch");
  // contract one axis at a time to keep the cost at O(n^5)
  DenseTensor cur = riemann_low;
  for (int axis = 0; axis < 4; ++axis) {
    DenseTensor next({n, n, n, n});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double acc = 0.0;
            // contracted index is always axis 0 after the previous rotation
            for (int m = 0; m < n; ++m)
              acc += cur(m, a, b, c) * f(m, d);
            next(a, b, c, d) = acc;
          }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace wcs
