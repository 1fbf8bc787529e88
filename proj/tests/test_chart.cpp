#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wcs/chart.hpp"

using namespace wcs;

namespace {

// Richardson-extrapolated central difference of a matrix field, first
// derivative along axis k.
Mat<double> fd_deriv(const std::function<Mat<double>(const Vec&)>& f,
                     const Vec& x, int k, double h = 1e-4) {
  auto cd = [&](double step) {
    Vec xp = x, xm = x;
    xp[static_cast<size_t>(k)] += step;
    xm[static_cast<size_t>(k)] -= step;
    Mat<double> a = f(xp), b = f(xm);
    for (size_t i = 0; i < a.a.size(); ++i)
      a.a[i] = (a.a[i] - b.a[i]) / (2.0 * step);
    return a;
  };
  Mat<double> d1 = cd(h), d2 = cd(h / 2.0);
  for (size_t i = 0; i < d1.a.size(); ++i)
    d1.a[i] = (4.0 * d2.a[i] - d1.a[i]) / 3.0;
  return d1;
}

}  // namespace

TEST_CASE("christoffel: euclidean vanishes, sphere matches closed form") {
  ChartMetric eu = euclidean_chart(3);
  DenseTensor g0 = christoffel(eu, {0.1, -0.4, 2.0});
  CHECK(g0.max_abs() == 0.0);

  ChartMetric sp = sphere_chart();
  const double th = 0.9;
  DenseTensor gm = christoffel(sp, {th, 0.3});
  CHECK(gm(0, 1, 1) == doctest::Approx(-std::sin(th) * std::cos(th)));
  CHECK(gm(1, 0, 1) == doctest::Approx(std::cos(th) / std::sin(th)));
  CHECK(gm(1, 1, 0) == doctest::Approx(std::cos(th) / std::sin(th)));
  CHECK(gm(0, 0, 0) == doctest::Approx(0.0));
}

TEST_CASE("hyper-dual metric jets match finite differences") {
  ChartMetric th = thurston_chart(2.0);
  Vec x{0.2, 0.3, -0.1, 0.4};
  MatrixJet jet = matrix_jet(th.dim, th.g_hd, x);
  for (int k = 0; k < 4; ++k) {
    Mat<double> fd = fd_deriv(th.g, x, k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(jet.d(k, i, j) ==
              doctest::Approx(fd(i, j)).epsilon(1e-7).scale(1.0));
  }

  ChartMetric sp = sphere_chart();
  Vec y{1.1, 0.2};
  MatrixJet sj = matrix_jet(sp.dim, sp.g_hd, y);
  // d²/dθ² sin²θ = 2cos2θ
  CHECK(sj.d2(0, 0, 1, 1) == doctest::Approx(2.0 * std::cos(2.2)));
}

TEST_CASE("riemann: flat zero; unit sphere has sectional curvature 1") {
  CurvatureData flat = riemann(euclidean_chart(4), {1.0, 2.0, 3.0, 4.0});
  CHECK(flat.riemann_low.max_abs() == 0.0);

  ChartMetric sp = sphere_chart();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.4, 2.6);
  for (int t = 0; t < 5; ++t) {
    Vec x{u(rng), u(rng)};
    CurvatureData c = riemann(sp, x);
    const double denom =
        c.g(0, 0) * c.g(1, 1) - c.g(0, 1) * c.g(0, 1);
    // K = R(∂_1,∂_2,∂_2,∂_1)/(g_11 g_22 − g_12²) with these conventions
    CHECK(c.riemann_low(0, 1, 1, 0) / denom == doctest::Approx(1.0));
  }
}

TEST_CASE("curvature symmetries and first Bianchi on thurston g-tilde") {
  ChartMetric th = thurston_chart(1.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int t = 0; t < 10; ++t) {
    Vec x{0.0, u(rng), 0.0, 0.0};
    CompatibleGeometry cg = compatible_geometry(th, x);
    const DenseTensor& r = cg.curv_tilde.riemann_low;
    const double scale = std::max(1.0, r.max_abs());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            CHECK(std::abs(r(i, j, k, l) + r(j, i, k, l)) < 1e-8 * scale);
            CHECK(std::abs(r(i, j, k, l) + r(i, j, l, k)) < 1e-8 * scale);
            CHECK(std::abs(r(i, j, k, l) - r(k, l, i, j)) < 1e-8 * scale);
            CHECK(std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)) <
                  1e-8 * scale);
          }
  }
}

TEST_CASE("compatible triple: flat R^4 is already compatible") {
  ChartMetric ft = flat_torus_chart();
  Vec x{0.1, 0.2, 0.3, 0.4};
  CompatibleTriple<double> t = compatible_triple(ft.g(x), ft.omega(x));
  Mat<double> w = ft.omega(x);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(t.a_op(i, j) == doctest::Approx(w(j, i)).epsilon(1e-12));
      CHECK(t.j_op(i, j) == doctest::Approx(w(j, i)).epsilon(1e-12));
      CHECK(t.g_tilde(i, j) ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("compatible triple reproduces the thurston A, J, g-tilde") {
  const double kappa = 3.0;
  ChartMetric th = thurston_chart(kappa);
  const double t2 = 0.35;
  const double beta = 1.0 + t2 - t2 * t2;
  const double rb = std::sqrt(beta);
  Vec x{0.0, t2, 0.0, 0.0};
  CompatibleTriple<double> t = compatible_triple(th.g(x), th.omega(x));

  // Stored operators act on columns, i.e. entry (k,i) = A^k_i; the rows
  // below are therefore columns of a_op.
  CHECK(t.a_op(2, 2) == doctest::Approx(t2 * kappa / beta));
  CHECK(t.a_op(3, 2) == doctest::Approx(kappa / beta));
  CHECK(t.a_op(2, 3) == doctest::Approx(-(1.0 + t2) * kappa / beta));
  CHECK(t.a_op(3, 3) == doctest::Approx(-t2 * kappa / beta));
  CHECK(t.a_op(1, 0) == doctest::Approx(1.0));
  CHECK(t.a_op(0, 1) == doctest::Approx(-1.0));

  // J is independent of kappa
  CHECK(t.j_op(2, 2) == doctest::Approx(t2 / rb));
  CHECK(t.j_op(3, 2) == doctest::Approx(1.0 / rb));
  CHECK(t.j_op(2, 3) == doctest::Approx(-(1.0 + t2) / rb));
  CHECK(t.j_op(3, 3) == doctest::Approx(-t2 / rb));

  CHECK(t.g_tilde(2, 2) == doctest::Approx(kappa / rb));
  CHECK(t.g_tilde(2, 3) == doctest::Approx(-t2 * kappa / rb));
  CHECK(t.g_tilde(3, 3) == doctest::Approx((1.0 + t2) * kappa / rb));
  CHECK(t.g_tilde(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("compatible triple invariants at random points") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::vector<ChartMetric> charts = {thurston_chart(1.0), thurston_chart(-2.0),
                                     s2xs2_chart(), flat_torus_chart()};
  for (const ChartMetric& cm : charts) {
    for (int t = 0; t < 100; ++t) {
      Vec x(4);
      for (double& xi : x) xi = 0.3 + 0.4 * u(rng);
      Mat<double> g = cm.g(x), w = cm.omega(x);
      CompatibleTriple<double> tr = compatible_triple(g, w);

      // omega_{ij} = A^k_i g_{kj}
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double acc = 0.0;
          for (int k = 0; k < 4; ++k) acc += tr.a_op(k, i) * g(k, j);
          CHECK(std::abs(acc - w(i, j)) < 1e-10);
        }

      // J^2 = -I
      Mat<double> j2 = tr.j_op * tr.j_op;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          CHECK(std::abs(j2(i, j) + (i == j ? 1.0 : 0.0)) < 1e-10);

      // omega(u,v) = g-tilde(Ju, v)
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> uu(4), vv(4);
        for (int i = 0; i < 4; ++i) { uu[static_cast<size_t>(i)] = v(rng); vv[static_cast<size_t>(i)] = v(rng); }
        std::vector<double> ju = tr.j_op * uu;
        double lhs = 0.0, rhs = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            lhs += uu[static_cast<size_t>(i)] * w(i, j) * vv[static_cast<size_t>(j)];
            rhs += ju[static_cast<size_t>(i)] * tr.g_tilde(i, j) * vv[static_cast<size_t>(j)];
          }
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }

      // g-tilde symmetric positive definite
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          CHECK(std::abs(tr.g_tilde(i, j) - tr.g_tilde(j, i)) < 1e-10);
      CHECK_NOTHROW(cholesky(tr.g_tilde));
    }
  }
}

TEST_CASE("nabla J: flat constant J vanishes; kahler product vanishes") {
  CompatibleGeometry ft = compatible_geometry(flat_torus_chart(),
                                              {0.1, 0.2, 0.3, 0.4});
  CHECK(ft.nabla_j.max_abs() < 1e-12);

  CompatibleGeometry ks = compatible_geometry(s2xs2_chart(),
                                              {0.9, 0.4, 1.3, 2.0});
  CHECK(ks.nabla_j.max_abs() < 1e-8);
}

TEST_CASE("nabla J on thurston: nonzero and satisfies the cyclic identity") {
  ChartMetric th = thurston_chart(2.0);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  Vec x{0.0, u(rng), 0.0, 0.0};
  CompatibleGeometry cg = compatible_geometry(th, x);
  CHECK(cg.nabla_j.max_abs() > 1e-3);

  // lowered: NJ(i,j,c) = g-tilde((∇_i J)∂_j, ∂_c)
  auto nj_low = [&](int i, int j, int c) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k)
      acc += cg.nabla_j(i, j, k) * cg.triple.g_tilde(k, c);
    return acc;
  };
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> X(4), Y(4), Z(4);
    for (int i = 0; i < 4; ++i) { X[static_cast<size_t>(i)] = v(rng); Y[static_cast<size_t>(i)] = v(rng); Z[static_cast<size_t>(i)] = v(rng); }
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int c = 0; c < 4; ++c)
          s += nj_low(i, j, c) * (X[static_cast<size_t>(i)] * Y[static_cast<size_t>(j)] * Z[static_cast<size_t>(c)] +
                                  Y[static_cast<size_t>(i)] * Z[static_cast<size_t>(j)] * X[static_cast<size_t>(c)] -
                                  Z[static_cast<size_t>(i)] * Y[static_cast<size_t>(j)] * X[static_cast<size_t>(c)]);
    CHECK(std::abs(s) < 1e-8);
  }
}

TEST_CASE("thurston gluing and volume checks") {
  ChartMetric th = thurston_chart(1.0);
  Mat<double> g0 = th.g({0.0, 0.0, 0.0, 0.0});
  Mat<double> g1 = th.g({0.0, 1.0, 0.0, 0.0});
  CHECK(g0(2, 3) == 0.0);
  CHECK(g1(2, 3) == -1.0);
  CHECK(g0(3, 3) == 1.0);
  CHECK(g1(3, 3) == 2.0);
  for (double t2 : {0.0, 0.3, 1.0}) {
    Mat<double> g = th.g({0.0, t2, 0.0, 0.0});
    const double det22 = g(2, 2) * g(3, 3) - g(2, 3) * g(3, 2);
    CHECK(det22 == doctest::Approx(1.0 + t2 - t2 * t2));
  }
}

TEST_CASE("degenerate inputs raise errors") {
  Mat<double> g = Mat<double>::identity(2);
  Mat<double> w(2);  // zero form: degenerate
  CHECK_THROWS_AS(compatible_triple(g, w), DegeneracyError);
  Mat<double> ns(2);
  ns(0, 1) = 1.0;
  ns(1, 0) = 1.0;  // not antisymmetric
  CHECK_THROWS_AS(compatible_triple(g, ns), InputError);
  CHECK_THROWS_AS(thurston_chart(0.0), InputError);
}
