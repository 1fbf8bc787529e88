#pragma once

#include <random>

#include "wcs/bundle.hpp"
#include "wcs/chain.hpp"

namespace wcs {

// The signed permutation chain sum over the graded bundle curvature,
// Σ_σ sgn(σ) \bar R_{σ₀ℓ₁0}{}^r \bar R_{σ₁σ₂ℓ₂}{}^{ℓ₁} ··· , as a polynomial
// in p. poly excludes the rational prefactor (2n+1)/2^{2n-1}, which is
// reported separately and only applied by integral pipelines.
struct WCSDensity {
  int D = 0;  // 4n+1
  int n = 0;
  PPoly poly;
  double prefactor = 0.0;
};

WCSDensity wcs_density(const BundleCurvature& bc, int threads = 1);

// Numeric chain value at a fixed p (independent path used to cross-check the
// polynomial arithmetic by interpolation).
double wcs_density_at(const BundleCurvature& bc, double p, int threads = 1);

// The chain split by whether the leading permutation slot is the fiber
// index: fiber_part has σ₀ = 0, other_part the rest.
struct DensitySplit {
  PPoly fiber_part;
  PPoly other_part;
};
DensitySplit wcs_density_split(const BundleCurvature& bc, int threads = 1);

// Top coefficient S_{d+1,d+2} for constant compatible data (flat base):
// only the grade-2 curvature contributes at the top power, so the chain
// collapses to a double-precision sum.
ChainSumResult<double> top_coefficient_brute(const Mat<double>& g,
                                             const Mat<double>& j_low,
                                             int threads = 1);

// Closed form (−1)^{n+1} 2^{2n+1} (2n+1) · pfaffian_sum(Ĵ) for base dim 4n,
// with Ĵ the frame components of the lowered J.
double top_coefficient_closed_form(const Mat<double>& g,
                                   const Mat<double>& j_low);

// The top-grade sum computed two ways: the full grade-2 expansion and the
// reduced form in which the first two double-index factors are replaced by
// their metric-contraction remainder (the terms carrying a symmetric
// g-factor cancel in transposition pairs). full and reduced must agree;
// pair_term is the residual of an explicit transposition pair (exactly 0).
struct CancellationReport {
  double full = 0.0;
  double reduced = 0.0;
  double pair_term = 0.0;
  double term_scale = 0.0;
};
CancellationReport cancellation_check(const Mat<double>& g,
                                      const Mat<double>& j_low,
                                      int threads = 1);

// Top coefficient in base dimension ≡ 2 (mod 4), expected to vanish.
struct VanishingReport {
  double value = 0.0;
  double term_scale = 0.0;
};
VanishingReport dim_4n_plus_2_vanishing(const Mat<double>& g,
                                        const Mat<double>& j_low,
                                        int threads = 1);

// Random compatible pair: normal-form J and g = identity conjugated by a
// random perturbation of the identity, so J² = −1 and compatibility hold
// exactly in a non-orthonormal gauge.
struct CompatiblePair {
  Mat<double> g;
  Mat<double> j_op;
  Mat<double> j_low;
};
CompatiblePair random_compatible(int dim, std::mt19937& rng);

// Normal-form lowered J on even dimension d: J_{a,a+d/2} = 1.
Mat<double> normal_j_low(int dim);

}  // namespace wcs
