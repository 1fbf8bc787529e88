#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wcs/bundle.hpp"

using namespace wcs;

namespace {

ConnectionPotential torus_potential() {
  return make_potential(4, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    std::vector<T> e(4, T{0.0});
    e[1] = x[0];
    e[3] = x[2];
    return e;
  });
}

ConnectionPotential thurston_potential_local(double kappa) {
  return make_potential(4, [kappa](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    std::vector<T> e(4, T{0.0});
    e[1] = x[0];
    e[3] = T{kappa} * x[2];
    return e;
  });
}

}  // namespace

TEST_CASE("connection potential curl equals omega") {
  ChartMetric ft = flat_torus_chart();
  CHECK(potential_curl_deviation(torus_potential(), ft, {0.3, 0.1, 0.7, 0.2}) <
        1e-12);
  ChartMetric th = thurston_chart(3.0);
  CHECK(potential_curl_deviation(thurston_potential_local(3.0), th,
                                 {0.3, 0.4, 0.5, 0.6}) < 1e-12);
}

TEST_CASE("orthonormal frame") {
  ChartMetric th = thurston_chart(2.0);
  Mat<double> g = th.g({0.0, 0.4, 0.0, 0.0});
  Mat<double> e = orthonormal_frame(g);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double acc = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += e(i, a) * g(i, j) * e(j, b);
      CHECK(acc == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("grade structure and fiber-block values") {
  ChartMetric th = thurston_chart(1.0);
  Vec x{0.0, 0.37, 0.0, 0.0};
  BundleCurvature bc = bar_curvature(compatible_geometry(th, x), x);
  CHECK(bc.gram_deviation < 1e-12);
  CHECK(bc.components.max_grade() == 2);
  CHECK(bc.components.grades().size() == 3);

  // \bar R(e_a, ξ, e_a, ξ) = −p², i.e. grade-2 entry −1
  const DenseTensor* g2 = bc.components.find_grade(2);
  REQUIRE(g2 != nullptr);
  for (int a = 1; a <= 4; ++a) CHECK((*g2)(a, 0, a, 0) == doctest::Approx(-1.0));

  // Kähler base: grade 1 vanishes
  ChartMetric ks = s2xs2_chart();
  Vec y{1.0, 0.4, 1.2, 0.8};
  BundleCurvature kc = bar_curvature(compatible_geometry(ks, y), y);
  const DenseTensor* k1 = kc.components.find_grade(1);
  REQUIRE(k1 != nullptr);
  CHECK(k1->max_abs() < 1e-8);
  // non-Kähler Thurston: grade 1 present
  const DenseTensor* t1 = bc.components.find_grade(1);
  CHECK(t1->max_abs() > 1e-3);
}

TEST_CASE("fiber geodesics and the lift derivative of xi") {
  const double kappa = 2.0, p = 3.0;
  ChartMetric th = thurston_chart(kappa);
  ConnectionPotential pot = thurston_potential_local(kappa);
  ChartMetric b5 = make_bundle_metric(th, pot, p);
  Vec x{0.1, 0.45, 0.3, 0.7};
  Vec x5{0.2, x[0], x[1], x[2], x[3]};
  DenseTensor gamma5 = christoffel(b5, x5);

  // circle fibers are geodesics: Γ^k_{00} = 0
  for (int k = 0; k < 5; ++k) CHECK(std::abs(gamma5(k, 0, 0)) < 1e-9);

  // \bar∇_{X^L} ξ = p (JX)^L for the lifted base frame vectors
  CompatibleGeometry cg = compatible_geometry(th, x);
  Mat<double> e = orthonormal_frame(cg.triple.g_tilde);
  Mat<double> f = lifted_frame(e, pot, p, x);
  std::vector<double> eta = pot.eta(x);
  for (int a = 1; a <= 4; ++a) {
    // derivative components: Σ_i X^L_i Γ^k_{i0}
    std::vector<double> deriv(5, 0.0);
    for (int k = 0; k < 5; ++k)
      for (int i = 0; i < 5; ++i) deriv[static_cast<size_t>(k)] += f(i, a) * gamma5(k, i, 0);
    // p (JX)^L
    std::vector<double> jx(4, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) jx[static_cast<size_t>(i)] += cg.triple.j_op(i, j) * e(j, a - 1);
    double etajx = 0.0;
    for (int i = 0; i < 4; ++i) etajx += eta[static_cast<size_t>(i)] * jx[static_cast<size_t>(i)];
    CHECK(deriv[0] == doctest::Approx(-2.0 * p * p * etajx).epsilon(1e-8).scale(1.0));
    for (int i = 0; i < 4; ++i)
      CHECK(deriv[static_cast<size_t>(i) + 1] ==
            doctest::Approx(p * jx[static_cast<size_t>(i)]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("direct 5D curvature equals the graded assembly: flat base") {
  ChartMetric ft = flat_torus_chart();
  ConnectionPotential pot = torus_potential();
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double p : {1.0, 2.0}) {
    ChartMetric b5 = make_bundle_metric(ft, pot, p);
    Vec x{u(rng), u(rng), u(rng), u(rng)};
    Vec x5{u(rng), x[0], x[1], x[2], x[3]};
    CompatibleGeometry cg = compatible_geometry(ft, x);
    BundleCurvature bc = bar_curvature(cg, x);

    CurvatureData direct = riemann(b5, x5);
    Mat<double> f = lifted_frame(bc.frame, pot, p, x);
    DenseTensor got = frame_curvature(direct.riemann_low, f);
    DenseTensor want = bc.components.eval(p);
    const double scale = std::max(1.0, want.max_abs());
    for (size_t i = 0; i < got.data().size(); ++i)
      CHECK(std::abs(got.data()[i] - want.data()[i]) < 1e-8 * scale);
  }
}

TEST_CASE("direct 5D curvature equals the graded assembly: thurston") {
  const double kappa = 2.0;
  ChartMetric th = thurston_chart(kappa);
  ConnectionPotential pot = thurston_potential_local(kappa);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (double p : {1.0, 2.0, 3.0}) {
    ChartMetric b5 = make_bundle_metric(th, pot, p);
    for (int t = 0; t < 10; ++t) {
      Vec x{u(rng), u(rng), u(rng), u(rng)};
      Vec x5{u(rng), x[0], x[1], x[2], x[3]};
      CompatibleGeometry cg = compatible_geometry(th, x);
      BundleCurvature bc = bar_curvature(cg, x);
      CurvatureData direct = riemann(b5, x5);
      Mat<double> f = lifted_frame(bc.frame, pot, p, x);
      DenseTensor got = frame_curvature(direct.riemann_low, f);
      DenseTensor want = bc.components.eval(p);
      const double scale = std::max(1.0, want.max_abs());
      for (size_t i = 0; i < got.data().size(); ++i)
        CHECK(std::abs(got.data()[i] - want.data()[i]) < 1e-8 * scale);
    }
  }
}

TEST_CASE("constant-data bundle matches the general assembly on flat base") {
  ChartMetric ft = flat_torus_chart();
  Vec x{0.2, 0.4, 0.6, 0.8};
  CompatibleGeometry cg = compatible_geometry(ft, x);
  BundleCurvature a = bar_curvature(cg, x);
  Mat<double> w = ft.omega(x);
  BundleCurvature b = bundle_from_constant(ft.g(x), w);
  DenseTensor da = a.components.eval(2.0), db = b.components.eval(2.0);
  for (size_t i = 0; i < da.data().size(); ++i)
    CHECK(da.data()[i] == doctest::Approx(db.data()[i]).epsilon(1e-10));
}

TEST_CASE("graded curvature symmetry invariants") {
  ChartMetric th = thurston_chart(1.5);
  Vec x{0.0, 0.62, 0.0, 0.0};
  BundleCurvature bc = bar_curvature(compatible_geometry(th, x), x);
  for (const auto& [q, t] : bc.components.grades()) {
    const double scale = std::max(1.0, t.max_abs());
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k)
          for (int l = 0; l < 5; ++l) {
            CHECK(std::abs(t(i, j, k, l) + t(j, i, k, l)) < 1e-10 * scale);
            CHECK(std::abs(t(i, j, k, l) + t(i, j, l, k)) < 1e-10 * scale);
            CHECK(std::abs(t(i, j, k, l) - t(k, l, i, j)) < 1e-10 * scale);
          }
  }
}
