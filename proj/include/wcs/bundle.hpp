#pragma once

#include "wcs/chart.hpp"
#include "wcs/tensor.hpp"

namespace wcs {

// Curvature of the circle-bundle metric over a 4n-dim base, expressed in an
// orthonormal frame (index 0 = the unit fiber direction ξ, indices 1..4n =
// horizontal lifts of a base-orthonormal frame) and graded by powers of the
// Chern number p. components(i,j,k,l) carries \bar R_{ijkl}; since the frame
// is orthonormal the mixed components \bar R_{ijk}{}^l coincide with it.
struct BundleCurvature {
  Vec base_point;
  int base_dim = 0;           // 4n
  int D = 0;                  // 4n + 1
  Mat<double> frame;          // base frame, column a = e_{a+1} in coordinates
  double gram_deviation = 0.0;
  PGradedTensor components;
};

// Base-orthonormal frame by modified Gram-Schmidt on the coordinate basis.
Mat<double> orthonormal_frame(const Mat<double>& g);

// Assembles the p-graded bundle curvature from base data at x:
//   grade 0: base curvature on horizontal indices;
//   grade 1: the g((∇J)·,·) components;
//   grade 2: the three J⊗J horizontal terms and the −δ fiber terms.
BundleCurvature bar_curvature(const CompatibleGeometry& cg, const Vec& x);

// Same assembly for a constant compatible pair (flat base, ∇J = 0): only the
// grade-2 terms survive. j_low is the lowered form ω_{ij} = (Jᵀg)_{ij}.
BundleCurvature bundle_from_constant(const Mat<double>& g,
                                     const Mat<double>& j_low);

// Local potential eta with d(eta) = omega on the base chart; the bundle
// connection form is dθ₀ + p·eta.
struct ConnectionPotential {
  int dim = 0;
  std::function<std::vector<double>(const Vec&)> eta;
  std::function<std::vector<HyperDual>(const HVec&)> eta_hd;
};

template <class F>
ConnectionPotential make_potential(int dim, F f) {
  ConnectionPotential c;
  c.dim = dim;
  c.eta = [f](const Vec& x) { return f(x); };
  c.eta_hd = [f](const HVec& x) { return f(x); };
  return c;
}

// max_{ij} |(d eta)_{ij} − ω_{ij}| at x, derivatives via hyper-duals.
double potential_curl_deviation(const ConnectionPotential& pot,
                                const ChartMetric& base, const Vec& x);

// The (dim+1)-dim chart metric of the bundle over the compatible base
// metric g̃: coordinate 0 is the fiber angle θ₀, and
//   \bar g = g̃ + (dθ₀ + p·eta) ⊗ (dθ₀ + p·eta).
ChartMetric make_bundle_metric(const ChartMetric& base,
                               const ConnectionPotential& pot, double p);

// Lifted orthonormal frame in the 5D chart: column 0 = ξ = ∂θ₀, column a =
// (−p·eta(e_a), e_a) for the base frame columns e_a.
Mat<double> lifted_frame(const Mat<double>& base_frame,
                         const ConnectionPotential& pot, double p,
                         const Vec& x);

// Curvature components in a given frame: out(a,b,c,d) =
// Σ R_low(i,j,k,l) F(i,a) F(j,b) F(k,c) F(l,d).
DenseTensor frame_curvature(const DenseTensor& riemann_low,
                            const Mat<double>& f);

}  // namespace wcs
