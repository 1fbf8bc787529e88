#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wcs/kahler.hpp"
#include "wcs/report.hpp"
#include "wcs/thurston.hpp"
#include "wcs/wcs_engine.hpp"

namespace {

using namespace wcs;

int emit(const RunReport& rep) {
  std::cout << rep.to_json().dump(2) << "\n";
  return rep.all_pass() ? 0 : 1;
}

int cmd_table(const std::vector<int>& dims, int threads) {
  Stopwatch sw;
  RunReport rep;
  rep.command = "table";
  rep.inputs["dims"] = dims;
  rep.inputs["threads"] = threads;

  for (int dim : dims) {
    if (dim != 4 && dim != 6 && dim != 8)
      throw CLI::ValidationError("--dims", "supported dims are 4, 6, 8");
    const std::string tag = "dim" + std::to_string(dim);
    Mat<double> g = Mat<double>::identity(dim);
    Mat<double> j = normal_j_low(dim);
    auto brute = top_coefficient_brute(g, j, threads);
    rep.outputs[tag + "_brute"] = brute.value;
    if (dim % 4 == 0) {
      const double closed = top_coefficient_closed_form(g, j);
      rep.outputs[tag + "_closed_form"] = closed;
      rep.check(tag + " brute vs closed form", closed, brute.value,
                1e-9 * std::abs(closed));
      rep.outputs[tag + "_sign_agreement"] =
          (brute.value * closed > 0.0) ? 1.0 : 0.0;
    }
    if (dim == 4) rep.check("dim4 tabulated value", -192.0, brute.value, 1e-9);
    if (dim == 6)
      rep.check("dim6 tabulated value", 0.0, brute.value,
                1e-9 * std::max(1.0, brute.term_scale));
    if (dim == 8) {
      rep.check("dim8 tabulated magnitude", 61440.0, std::abs(brute.value),
                1e-9 * 61440.0);
      // the table lists +61440, but both independent computations here give
      // the negative sign; the magnitude check above is the binding one
      rep.outputs["dim8_tabulated_sign_matches"] =
          (brute.value > 0.0) ? 1.0 : 0.0;
    }
  }
  rep.elapsed_ms = sw.elapsed_ms();
  return emit(rep);
}

int cmd_thurston(double p, double kappa, int nodes, const std::string& format,
                 int threads) {
  Stopwatch sw;
  QuadratureRule rule = gauss_legendre(nodes);

  if (format == "csv") {
    auto rows = thurston_node_sweep(p, kappa, rule, threads);
    std::printf("theta2,beta,integrand,closed_form,abs_diff\n");
    bool ok = true;
    for (const auto& r : rows) {
      std::printf("%.15g,%.15g,%.15g,%.15g,%.15g\n", r.theta2, r.beta,
                  r.integrand, r.closed_form, r.abs_diff);
      ok = ok && r.abs_diff <= 1e-6 * std::max(1.0, std::abs(r.closed_form));
    }
    return ok ? 0 : 1;
  }

  RunReport rep;
  rep.command = "thurston";
  rep.inputs["p"] = p;
  rep.inputs["kappa"] = kappa;
  rep.inputs["nodes"] = nodes;
  rep.inputs["threads"] = threads;

  ThurstonIntegral ti = thurston_integral(p, kappa, rule, threads);
  NonvanishingResult nv = nonvanishing_check(std::abs(p));
  rep.outputs["integral"] = ti.value;
  rep.outputs["inner_integral"] = ti.inner;
  rep.outputs["prefactor"] = ti.prefactor;
  rep.outputs["max_pointwise_diff"] = ti.max_pointwise_diff;
  rep.outputs["nonvanishing_value"] = nv.value;
  rep.outputs["nonvanishing"] = nv.nonzero ? 1.0 : 0.0;

  const double ap = std::abs(p);
  const double inner_closed = 3072.0 * std::pow(ap, 4) -
                              640.0 * ap * ap * beta_integral_2() -
                              25.0 * beta_integral_4();
  rep.check("inner integral vs closed form", inner_closed, ti.inner,
            1e-10 * std::abs(inner_closed));
  rep.check("pointwise integrand vs closed form (max abs diff)", 0.0,
            ti.max_pointwise_diff, 1e-6);
  rep.elapsed_ms = sw.elapsed_ms();
  return emit(rep);
}

void verify_lemma33(RunReport& rep, std::mt19937& rng, int threads) {
  (void)threads;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> u2(0.05, 0.95);  // SPD range of θ₂
  const double kappa = 2.0;
  ChartMetric base = thurston_chart(kappa);
  ConnectionPotential pot = thurston_potential(kappa);
  for (double p : {1.0, 2.0, 3.0}) {
    ChartMetric bundle = make_bundle_metric(base, pot, p);
    double max_rel = 0.0;
    for (int t = 0; t < 10; ++t) {
      Vec x{u(rng), u2(rng), u(rng), u(rng)};
      CompatibleGeometry cg = compatible_geometry(base, x);
      BundleCurvature bc = bar_curvature(cg, x);
      DenseTensor assembled = bc.components.eval(p);

      Vec x5{0.0, x[0], x[1], x[2], x[3]};
      CurvatureData cd = riemann(bundle, x5);
      Mat<double> f5 = lifted_frame(bc.frame, pot, p, x);
      DenseTensor direct = frame_curvature(cd.riemann_low, f5);

      double scale = std::max(1.0, direct.max_abs());
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          for (int k = 0; k < 5; ++k)
            for (int l = 0; l < 5; ++l)
              max_rel = std::max(
                  max_rel, std::abs(assembled(i, j, k, l) -
                                    direct(i, j, k, l)) /
                               scale);
    }
    rep.check("graded assembly vs direct 5D curvature, p=" +
                  std::to_string(static_cast<int>(p)),
              0.0, max_rel, 1e-8);
  }
}

void verify_prop52(RunReport& rep, std::mt19937& rng, int threads) {
  ChartMetric ks = s2xs2_chart();
  std::uniform_real_distribution<double> us(0.4, 2.7);
  double max_diff = 0.0, max_beta = 0.0, max_def = 0.0;
  for (int t = 0; t < 10; ++t) {
    Vec x{us(rng), us(rng), us(rng), us(rng)};
    Prop52Report r = prop52_check(ks, x, 1, threads);
    const double scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
    max_diff = std::max(max_diff, r.diff / scale);
    max_beta = std::max(max_beta, std::abs(r.beta_class));
    max_def = std::max(max_def, r.definitional_diff);
  }
  rep.check("prop52 lhs vs rhs on S2xS2 (relative)", 0.0, max_diff, 1e-6);
  rep.check("prop52 beta-class terms vanish", 0.0, max_beta, 1e-9);
  rep.check("prop52 definitional identity", 0.0, max_def, 1e-12);

  ChartMetric fs = fubini_study_chart();
  std::uniform_real_distribution<double> uc(-0.7, 0.7);
  double max_rel = 0.0;
  for (int t = 0; t < 10; ++t) {
    Vec x{uc(rng), uc(rng), uc(rng), uc(rng)};
    Prop52Report r = prop52_check(fs, x, 1, threads);
    max_rel = std::max(max_rel, r.diff / std::abs(r.rhs));
  }
  rep.check("prop52 lhs vs rhs on CP2 (relative, nonzero sides)", 0.0,
            max_rel, 1e-6);
}

void verify_appendix_a(RunReport& rep, std::mt19937& rng, int threads) {
  Mat<double> g6 = Mat<double>::identity(6);
  VanishingReport v = dim_4n_plus_2_vanishing(g6, normal_j_low(6), threads);
  rep.check("S_{7,8} vanishes for normal form data", 0.0, std::abs(v.value),
            1e-9 * std::max(1.0, v.term_scale));
  for (int t = 0; t < 5; ++t) {
    CompatiblePair cp = random_compatible(6, rng);
    VanishingReport vr = dim_4n_plus_2_vanishing(cp.g, cp.j_low, threads);
    rep.check("S_{7,8} vanishes, random compatible #" + std::to_string(t),
              0.0, std::abs(vr.value), 1e-9 * vr.term_scale);
  }
}

void verify_cancellation(RunReport& rep, std::mt19937& rng, int threads) {
  for (int dim : {4, 8}) {
    CancellationReport c = cancellation_check(
        Mat<double>::identity(dim), normal_j_low(dim), threads);
    const std::string tag = "dim " + std::to_string(dim);
    rep.check("full vs reduced top sum, " + tag, c.full, c.reduced,
              1e-9 * std::max(1.0, std::abs(c.full)));
    rep.check("transposition pair cancels, " + tag, 0.0, c.pair_term, 0.0);
  }
  for (int t = 0; t < 3; ++t) {
    CompatiblePair cp = random_compatible(4, rng);
    CancellationReport c = cancellation_check(cp.g, cp.j_low, threads);
    rep.check("full vs reduced, random #" + std::to_string(t), c.full,
              c.reduced, 1e-9 * std::max(1.0, std::abs(c.full)));
  }
}

void verify_gluing(RunReport& rep) {
  ChartMetric th = thurston_chart(1.0);
  Mat<double> g0 = th.g({0.0, 0.0, 0.0, 0.0});
  Mat<double> g1 = th.g({0.0, 1.0, 0.0, 0.0});
  rep.check("g34 at theta2=0", 0.0, g0(2, 3), 0.0);
  rep.check("g34 at theta2=1", -1.0, g1(2, 3), 0.0);
  rep.check("g44 at theta2=0", 1.0, g0(3, 3), 0.0);
  rep.check("g44 at theta2=1", 2.0, g1(3, 3), 0.0);
  for (double t : {0.0, 0.25, 1.0}) {
    Mat<double> g = th.g({0.0, t, 0.0, 0.0});
    const double det = g(2, 2) * g(3, 3) - g(2, 3) * g(3, 2);
    rep.check("det of the (3,4) block equals beta at theta2=" +
                  std::to_string(t),
              thurston_beta(t), det, 1e-14);
  }
  rep.check("endpoint dets agree", 1.0, thurston_beta(1.0), 0.0);
}

int cmd_verify(const std::string& suite, unsigned seed, int threads) {
  Stopwatch sw;
  RunReport rep;
  rep.command = "verify";
  rep.inputs["suite"] = suite;
  rep.inputs["seed"] = seed;
  rep.inputs["threads"] = threads;
  std::mt19937 rng(seed);

  if (suite == "lemma33")
    verify_lemma33(rep, rng, threads);
  else if (suite == "prop52")
    verify_prop52(rep, rng, threads);
  else if (suite == "appendixA")
    verify_appendix_a(rep, rng, threads);
  else if (suite == "cancellation")
    verify_cancellation(rep, rng, threads);
  else if (suite == "gluing")
    verify_gluing(rep);
  else
    throw CLI::ValidationError("--suite", "unknown suite: " + suite);

  rep.elapsed_ms = sw.elapsed_ms();
  return emit(rep);
}

int cmd_wcs_poly(int dim, unsigned seed, int threads) {
  Stopwatch sw;
  if (dim % 4 != 0 || dim < 4)
    throw CLI::ValidationError(
        "--dim", "density polynomial requires base dimension 4n");
  RunReport rep;
  rep.command = "wcs-poly";
  rep.inputs["dim"] = dim;
  rep.inputs["seed"] = seed;
  rep.inputs["threads"] = threads;

  std::mt19937 rng(seed);
  CompatiblePair cp = random_compatible(dim, rng);
  BundleCurvature bc = bundle_from_constant(cp.g, cp.j_low);
  WCSDensity d = wcs_density(bc, threads);
  rep.outputs["prefactor"] = d.prefactor;
  for (int q = 0; q <= d.poly.degree(); ++q)
    rep.outputs["p^" + std::to_string(q)] = d.poly.coeff(q);
  rep.check("no p^0 term", 0.0, d.poly.coeff(0), 0.0);
  rep.elapsed_ms = sw.elapsed_ms();
  return emit(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wodzicki-Chern-Simons density calculator"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  unsigned seed = 0;
  std::string format = "json";
  int nodes = 64;
  app.add_option("--threads", threads, "worker thread count");
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--format", format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--nodes", nodes, "quadrature node count");

  auto* table = app.add_subcommand("table", "top S coefficients per dim");
  std::vector<int> dims{4, 6, 8};
  table->add_option("--dims", dims, "base dimensions (subset of 4,6,8)");

  auto* thurston =
      app.add_subcommand("thurston", "integral over the Thurston bundle");
  double p = 1.0, kappa = 1.0;
  thurston->add_option("--p", p, "bundle parameter (nonzero integer)");
  thurston->add_option("--kappa", kappa, "symplectic scaling (nonzero)");

  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  std::string suite;
  verify
      ->add_option("--suite", suite,
                   "one of lemma33|prop52|appendixA|cancellation|gluing")
      ->required();

  auto* poly =
      app.add_subcommand("wcs-poly", "density polynomial on random data");
  int dim = 4;
  poly->add_option("--dim", dim, "base dimension (4n)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table) return cmd_table(dims, threads);
    if (*thurston) {
      if (p == 0.0) {
        std::cerr << "error: --p must be nonzero (the p = 0 bundle is a "
                     "product and carries no fibering)\n";
        return 2;
      }
      if (kappa == 0.0) {
        std::cerr << "error: --kappa must be nonzero\n";
        return 2;
      }
      return cmd_thurston(p, kappa, nodes, format, threads);
    }
    if (*verify) return cmd_verify(suite, seed, threads);
    if (*poly) return cmd_wcs_poly(dim, seed, threads);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const wcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
