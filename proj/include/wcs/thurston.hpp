#pragma once

#include <complex>
#include <vector>

#include "wcs/bundle.hpp"
#include "wcs/quadrature.hpp"

namespace wcs {

// β(θ₂) = 1 + θ₂ − θ₂², the determinant of the Thurston base metric.
double thurston_beta(double theta2);

// Connection potential η = θ₁dθ₂ + κθ₃dθ₄ with dη = ω_κ.
ConnectionPotential thurston_potential(double kappa);

// Coordinate-frame permutation chain Σ_σ sgn(σ) R̄_{σ₀ℓ0}{}^r ··· of the 5D
// bundle curvature at the coordinate point x5 = (θ₀, θ₁, θ₂, θ₃, θ₄). The
// value scales linearly in κ (the coordinate volume is κ dθ₁∧…∧dθ₄) and is
// independent of θ₀, θ₁, θ₃, θ₄.
double thurston_coordinate_chain(double p, double kappa,
                                 const std::vector<double>& x5,
                                 int threads = 1);

// Coordinate chain with the volume factor κ divided out; equals the framed
// density and the closed form (p²/16)(3072p⁴ − 640p²β⁻² − 25β⁻⁴) pointwise.
double thurston_integrand(double p, double kappa, double theta2,
                          int threads = 1);

double thurston_closed_integrand(double p, double theta2);

// Closed forms of the definite integrals ∫₀¹ β⁻² dθ₂ and ∫₀¹ β⁻⁴ dθ₂.
double beta_integral_2();
double beta_integral_4();

// acoth(x) = ½ ln((x+1)/(x−1)) for |x| > 1.
double acoth(double x);

struct ThurstonIntegral {
  double value = 0.0;       // prefactor * inner
  double inner = 0.0;       // ∫₀¹ (3072p⁴ − 640p²β⁻² − 25β⁻⁴) dθ₂
  double prefactor = 0.0;   // 3κπ²p^{3/2}/8
  double max_pointwise_diff = 0.0;  // max |integrand − closed form| at nodes
};

// Integral over the fibered Thurston manifold. The inner integrand is
// recovered from the permutation-sum chain at each quadrature node as
// (16/p²)·(chain/κ) and cross-checked against the closed form. Negative p is
// routed through |p|; p = 0 is rejected.
ThurstonIntegral thurston_integral(double p, double kappa,
                                   const QuadratureRule& rule,
                                   int threads = 1);

struct NodeRow {
  double theta2 = 0.0;
  double beta = 0.0;
  double integrand = 0.0;
  double closed_form = 0.0;
  double abs_diff = 0.0;
};

// Per-node comparison table used for CSV output.
std::vector<NodeRow> thurston_node_sweep(double p, double kappa,
                                         const QuadratureRule& rule,
                                         int threads = 1);

struct NonvanishingResult {
  double value = 0.0;
  bool nonzero = false;
};

// E(p) = 10(−1 − 24p² + 288p⁴) − 3√5(1 + 64p²)·acoth(√5); the integral over
// the Thurston bundle is nonzero iff E(p) ≠ 0.
NonvanishingResult nonvanishing_check(double p);

// The four roots of E(p) = 0, solved as a quadratic in q = p²: two real
// (≈ ±0.424868) and two purely imaginary (≈ ±0.159514i).
std::vector<std::complex<double>> quartic_roots();

}  // namespace wcs
