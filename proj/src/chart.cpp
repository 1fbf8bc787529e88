#include "wcs/chart.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace wcs {

namespace {

Eigen::MatrixXd to_eigen(const Mat<double>& m) {
  Eigen::MatrixXd e(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) e(i, j) = m(i, j);
  return e;
}

Mat<double> from_eigen(const Eigen::MatrixXd& e) {
  Mat<double> m(static_cast<int>(e.rows()));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m(i, j) = e(i, j);
  return m;
}

void check_spectrum(const Eigen::VectorXd& ev) {
  const double top = ev.cwiseAbs().maxCoeff();
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) <= 1e-12 * std::max(1.0, top))
      throw DegeneracyError(
          "matrix square root requires a positive spectrum");
}

}  // namespace

Mat<double> sym_sqrt(const Mat<double>& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(p));
  if (es.info() != Eigen::Success)
    throw DegeneracyError("eigendecomposition failed");
  check_spectrum(es.eigenvalues());
  return from_eigen(es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().asDiagonal() *
                    es.eigenvectors().transpose());
}

Mat<HyperDual> sym_sqrt(const Mat<HyperDual>& p) {
  const int n = p.n;
  Eigen::MatrixXd v(n, n), p1(n, n), p2(n, n), p12(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      v(i, j) = p(i, j).v;
      p1(i, j) = p(i, j).d1;
      p2(i, j) = p(i, j).d2;
      p12(i, j) = p(i, j).d12;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
  if (es.info() != Eigen::Success)
    throw DegeneracyError("eigendecomposition failed");
  check_spectrum(es.eigenvalues());
  const Eigen::MatrixXd q = es.eigenvectors();
  const Eigen::VectorXd s = es.eigenvalues().cwiseSqrt();

  // In the eigenbasis, differentiating S*S = P gives the Sylvester relation
  // (dS)_{ij} (s_i + s_j) = (dP)_{ij}, and at second order
  // (d12 S)_{ij} (s_i + s_j) = (d12 P − d1S d2S − d2S d1S)_{ij}.
  auto sylvester = [&](const Eigen::MatrixXd& rhs) {
    Eigen::MatrixXd x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = rhs(i, j) / (s(i) + s(j));
    return x;
  };
  const Eigen::MatrixXd s1t = sylvester(q.transpose() * p1 * q);
  const Eigen::MatrixXd s2t = sylvester(q.transpose() * p2 * q);
  const Eigen::MatrixXd s12t =
      sylvester(q.transpose() * p12 * q - s1t * s2t - s2t * s1t);

  const Eigen::MatrixXd sv = q * s.asDiagonal() * q.transpose();
  const Eigen::MatrixXd s1 = q * s1t * q.transpose();
  const Eigen::MatrixXd s2 = q * s2t * q.transpose();
  const Eigen::MatrixXd s12 = q * s12t * q.transpose();

  Mat<HyperDual> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = HyperDual{sv(i, j), s1(i, j), s2(i, j), s12(i, j)};
  return out;
}

MatrixJet matrix_jet(int dim,
                     const std::function<Mat<HyperDual>(const HVec&)>& f,
                     const Vec& x) {
  if (static_cast<int>(x.size()) != dim)
    throw DimensionError("point dimension mismatch");
  MatrixJet jet;
  jet.d = DenseTensor({dim, dim, dim});
  jet.d2 = DenseTensor({dim, dim, dim, dim});
  for (int k = 0; k < dim; ++k)
    for (int l = k; l < dim; ++l) {
      HVec xh(x.size());
      for (int i = 0; i < dim; ++i) xh[static_cast<size_t>(i)] = {x[static_cast<size_t>(i)], 0.0, 0.0, 0.0};
      xh[static_cast<size_t>(k)].d1 = 1.0;
      xh[static_cast<size_t>(l)].d2 = 1.0;
      Mat<HyperDual> m = f(xh);
      if (m.n != dim) throw DimensionError("field dimension mismatch");
      if (k == 0 && l == 0) jet.value = Mat<double>(dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          if (k == 0 && l == 0) jet.value(i, j) = m(i, j).v;
          if (k == l) jet.d(k, i, j) = m(i, j).d1;
          jet.d2(k, l, i, j) = m(i, j).d12;
          jet.d2(l, k, i, j) = m(i, j).d12;
        }
    }
  return jet;
}

DenseTensor christoffel(const MatrixJet& jet) {
  const int n = jet.value.n;
  Mat<double> ginv = inverse(jet.value);
  DenseTensor gamma({n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += ginv(k, l) *
                 (jet.d(i, j, l) + jet.d(j, i, l) - jet.d(l, i, j));
        gamma(k, i, j) = 0.5 * acc;
        gamma(k, j, i) = 0.5 * acc;
      }
  return gamma;
}

DenseTensor christoffel(const ChartMetric& m, const Vec& x) {
  return christoffel(matrix_jet(m.dim, m.g_hd, x));
}

CurvatureData curvature_from_jet(const MatrixJet& jet, const Vec& x) {
  const int n = jet.value.n;
  CurvatureData out;
  out.point = x;
  out.g = jet.value;
  out.g_inv = inverse(jet.value);
  out.gamma = christoffel(jet);

  // d_k (g^{-1}) = -g^{-1} (d_k g) g^{-1}
  DenseTensor dginv({n, n, n});
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double acc = 0.0;
        for (int c = 0; c < n; ++c)
          for (int e = 0; e < n; ++e)
            acc -= out.g_inv(a, c) * jet.d(k, c, e) * out.g_inv(e, b);
        dginv(k, a, b) = acc;
      }

  // dgamma(i, l, j, k) = d_i Γ^l_{jk}
  DenseTensor dgamma({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) {
            acc += dginv(i, l, m) *
                   (jet.d(j, m, k) + jet.d(k, m, j) - jet.d(m, j, k));
            acc += out.g_inv(l, m) *
                   (jet.d2(i, j, m, k) + jet.d2(i, k, m, j) -
                    jet.d2(i, m, j, k));
          }
          dgamma(i, l, j, k) = 0.5 * acc;
          dgamma(i, l, k, j) = 0.5 * acc;
        }

  out.riemann_mixed = DenseTensor({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (int m = 0; m < n; ++m)
            acc += out.gamma(m, j, k) * out.gamma(l, i, m) -
                   out.gamma(m, i, k) * out.gamma(l, j, m);
          out.riemann_mixed(i, j, k, l) = acc;
        }

  out.riemann_low = DenseTensor({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m)
            acc += out.riemann_mixed(i, j, k, m) * out.g(m, l);
          out.riemann_low(i, j, k, l) = acc;
        }
  return out;
}

CurvatureData riemann(const ChartMetric& m, const Vec& x) {
  return curvature_from_jet(matrix_jet(m.dim, m.g_hd, x), x);
}

DenseTensor nabla_j_from_parts(const DenseTensor& j_mixed,
                               const DenseTensor& dj,
                               const DenseTensor& gamma) {
  const int n = j_mixed.dims()[0];
  DenseTensor nj({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = dj(i, j, k);
        for (int l = 0; l < n; ++l)
          acc += gamma(k, i, l) * j_mixed(j, l) -
                 gamma(l, i, j) * j_mixed(l, k);
        nj(i, j, k) = acc;
      }
  return nj;
}

CompatibleGeometry compatible_geometry(const ChartMetric& m, const Vec& x) {
  if (!m.has_omega())
    throw InputError("chart has no symplectic form");
  const int n = m.dim;
  CompatibleGeometry out;
  out.triple = compatible_triple(m.g(x), m.omega(x));

  out.gt_jet.value = Mat<double>(n);
  out.gt_jet.d = DenseTensor({n, n, n});
  out.gt_jet.d2 = DenseTensor({n, n, n, n});
  out.j_mixed = DenseTensor({n, n});
  out.dj = DenseTensor({n, n, n});

  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      HVec xh(x.size());
      for (int i = 0; i < n; ++i) xh[static_cast<size_t>(i)] = {x[static_cast<size_t>(i)], 0.0, 0.0, 0.0};
      xh[static_cast<size_t>(k)].d1 = 1.0;
      xh[static_cast<size_t>(l)].d2 = 1.0;
      CompatibleTriple<HyperDual> t =
          compatible_triple(m.g_hd(xh), m.omega_hd(xh));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (k == 0 && l == 0) {
            out.gt_jet.value(i, j) = t.g_tilde(i, j).v;
            // j_mixed(j,k) = component k of J(∂_j) = column-operator (k,j)
            out.j_mixed(j, i) = t.j_op(i, j).v;
          }
          if (k == l) {
            out.gt_jet.d(k, i, j) = t.g_tilde(i, j).d1;
            out.dj(k, j, i) = t.j_op(i, j).d1;
          }
          out.gt_jet.d2(k, l, i, j) = t.g_tilde(i, j).d12;
          out.gt_jet.d2(l, k, i, j) = t.g_tilde(i, j).d12;
        }
    }

  out.gamma_tilde = christoffel(out.gt_jet);
  out.nabla_j = nabla_j_from_parts(out.j_mixed, out.dj, out.gamma_tilde);
  out.curv_tilde = curvature_from_jet(out.gt_jet, x);
  return out;
}

ChartMetric euclidean_chart(int dim) {
  return make_chart(dim, [dim](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    (void)x;
    return Mat<T>::identity(dim);
  });
}

ChartMetric sphere_chart() {
  return make_chart(2, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Mat<T> g(2);
    g(0, 0) = T{1.0};
    T s = sin(x[0]);
    g(1, 1) = s * s;
    return g;
  });
}

ChartMetric s2xs2_chart() {
  auto metric = [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Mat<T> g(4);
    g(0, 0) = T{1.0};
    T s1 = sin(x[0]);
    g(1, 1) = s1 * s1;
    g(2, 2) = T{1.0};
    T s2 = sin(x[2]);
    g(3, 3) = s2 * s2;
    return g;
  };
  auto form = [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Mat<T> w(4);
    T s1 = sin(x[0]);
    T s2 = sin(x[2]);
    w(0, 1) = s1;
    w(1, 0) = T{-1.0} * s1;
    w(2, 3) = s2;
    w(3, 2) = T{-1.0} * s2;
    return w;
  };
  return make_chart(4, metric, form);
}

ChartMetric flat_torus_chart() {
  auto metric = [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    (void)x;
    return Mat<T>::identity(4);
  };
  auto form = [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    (void)x;
    Mat<T> w(4);
    w(0, 1) = T{1.0};
    w(1, 0) = T{-1.0};
    w(2, 3) = T{1.0};
    w(3, 2) = T{-1.0};
    return w;
  };
  return make_chart(4, metric, form);
}

ChartMetric fubini_study_chart() {
  // Affine chart of CP² with Kähler potential log(1 + |z|²); real
  // coordinates (x₁, y₁, x₂, y₂) with z_i = x_i + i y_i. Writing the
  // Hermitian metric h_{ij̄} = [(1+|z|²)δ_{ij} − z̄_j z_i]/(1+|z|²)² as
  // a + ib, the real metric and Kähler form are
  //   g(∂x_i,∂x_j) = g(∂y_i,∂y_j) = 2a_{ij},  g(∂x_i,∂y_j) = 2b_{ij},
  //   ω(∂x_i,∂y_j) = 2a_{ij},  ω(∂x_i,∂x_j) = ω(∂y_i,∂y_j) = −2b_{ij}.
  auto hermitian = [](const auto& x, auto& a, auto& b) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    const T r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    const T den = (T{1.0} + r2) * (T{1.0} + r2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const T re = x[2 * i] * x[2 * j] + x[2 * i + 1] * x[2 * j + 1];
        const T im = x[2 * j] * x[2 * i + 1] - x[2 * i] * x[2 * j + 1];
        T aij = T{0.0} - re;
        if (i == j) aij += T{1.0} + r2;
        a(i, j) = aij / den;
        b(i, j) = im / den;
      }
  };
  auto metric = [hermitian](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Mat<T> a(2), b(2), g(4);
    hermitian(x, a, b);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g(2 * i, 2 * j) = T{2.0} * a(i, j);
        g(2 * i + 1, 2 * j + 1) = T{2.0} * a(i, j);
        g(2 * i, 2 * j + 1) = T{2.0} * b(i, j);
        g(2 * i + 1, 2 * j) = T{-2.0} * b(i, j);
      }
    return g;
  };
  auto form = [hermitian](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Mat<T> a(2), b(2), w(4);
    hermitian(x, a, b);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        w(2 * i, 2 * j + 1) = T{2.0} * a(i, j);
        w(2 * i + 1, 2 * j) = T{-2.0} * a(i, j);
        w(2 * i, 2 * j) = T{-2.0} * b(i, j);
        w(2 * i + 1, 2 * j + 1) = T{-2.0} * b(i, j);
      }
    return w;
  };
  return make_chart(4, metric, form);
}

ChartMetric thurston_chart(double kappa) {
  if (kappa == 0.0) throw InputError("kappa must be nonzero");
  auto metric = [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Mat<T> g(4);
    g(0, 0) = T{1.0};
    g(1, 1) = T{1.0};
    g(2, 2) = T{1.0};
    g(2, 3) = T{-1.0} * x[1];
    g(3, 2) = T{-1.0} * x[1];
    g(3, 3) = T{1.0} + x[1];
    return g;
  };
  auto form = [kappa](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    (void)x;
    Mat<T> w(4);
    w(0, 1) = T{1.0};
    w(1, 0) = T{-1.0};
    w(2, 3) = T{kappa};
    w(3, 2) = T{-kappa};
    return w;
  };
  return make_chart(4, metric, form);
}

}  // namespace wcs
