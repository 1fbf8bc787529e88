#pragma once

#include <functional>
#include <vector>

#include "wcs/errors.hpp"
#include "wcs/hyperdual.hpp"
#include "wcs/smallmat.hpp"
#include "wcs/tensor.hpp"

namespace wcs {

using Vec = std::vector<double>;
using HVec = std::vector<HyperDual>;

// A metric (and optionally a symplectic form) given in a single coordinate
// chart. Both fields are stored twice: once over doubles for plain
// evaluation and once over hyper-dual numbers for exact first and second
// derivatives.
struct ChartMetric {
  int dim = 0;
  std::function<Mat<double>(const Vec&)> g;
  std::function<Mat<HyperDual>(const HVec&)> g_hd;
  std::function<Mat<double>(const Vec&)> omega;
  std::function<Mat<HyperDual>(const HVec&)> omega_hd;

  bool has_omega() const { return static_cast<bool>(omega); }
};

// Builds a ChartMetric from generic callables f(x) -> Mat (and optionally
// w(x) -> Mat) usable with both double and HyperDual coordinates.
template <class F>
ChartMetric make_chart(int dim, F f) {
  ChartMetric c;
  c.dim = dim;
  c.g = [f](const Vec& x) { return f(x); };
  c.g_hd = [f](const HVec& x) { return f(x); };
  return c;
}

template <class F, class W>
ChartMetric make_chart(int dim, F f, W w) {
  ChartMetric c = make_chart(dim, f);
  c.omega = [w](const Vec& x) { return w(x); };
  c.omega_hd = [w](const HVec& x) { return w(x); };
  return c;
}

// Pointwise 2-jet of a symmetric matrix field:
//   value(i,j), d(k,i,j) = d_k value_{ij}, d2(k,l,i,j) = d_k d_l value_{ij}.
struct MatrixJet {
  Mat<double> value;
  DenseTensor d;
  DenseTensor d2;
};

// Evaluates the jet with dim*(dim+1)/2 hyper-dual sweeps (seed directions
// k and l on the two dual parts).
MatrixJet matrix_jet(int dim,
                     const std::function<Mat<HyperDual>(const HVec&)>& f,
                     const Vec& x);

// Levi-Civita connection coefficients, stored as gamma(k,i,j) = Γ^k_{ij}.
DenseTensor christoffel(const MatrixJet& jet);
DenseTensor christoffel(const ChartMetric& m, const Vec& x);

// Curvature of a chart metric at a point. Conventions:
//   R(X,Y)Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_{[X,Y]} Z,
//   mixed(i,j,k,l) = R_{ijk}{}^l = ∂_iΓ^l_{jk} − ∂_jΓ^l_{ik}
//                    + Γ^m_{jk}Γ^l_{im} − Γ^m_{ik}Γ^l_{jm},
//   low(i,j,k,l)   = R_{ijkl} = R_{ijk}{}^m g_{ml}.
struct CurvatureData {
  Vec point;
  Mat<double> g;
  Mat<double> g_inv;
  DenseTensor gamma;         // (k,i,j)
  DenseTensor riemann_mixed; // (i,j,k,l) upper l
  DenseTensor riemann_low;   // (i,j,k,l) all lower
};

CurvatureData curvature_from_jet(const MatrixJet& jet, const Vec& x);
CurvatureData riemann(const ChartMetric& m, const Vec& x);

// Polar decomposition data of A^k_i = ω_{ij} g^{jk}: with A* = −A the
// g-adjoint, S = sqrt(AA*) (g-self-adjoint positive), J = S^{-1}A, and
// g̃ = g(S·,·). All operators are stored acting on column vectors, i.e.
// entry (k,i) of a_op is A^k_i.
template <class T>
struct CompatibleTriple {
  Mat<T> a_op;
  Mat<T> s_op;
  Mat<T> j_op;
  Mat<T> g_tilde;
};

// Square root of a symmetric positive definite matrix via eigendecomposition.
// The hyper-dual overload transports the dual parts through the eigenbasis
// with Sylvester solves, so derivatives are exact.
Mat<double> sym_sqrt(const Mat<double>& p);
Mat<HyperDual> sym_sqrt(const Mat<HyperDual>& p);

template <class T>
CompatibleTriple<T> compatible_triple(const Mat<T>& g, const Mat<T>& omega) {
  const int n = g.n;
  if (omega.n != n) throw DimensionError("g and omega dimension mismatch");
  const double scale = std::max(1.0, max_abs_value(omega));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(value_of(omega(i, j)) + value_of(omega(j, i))) >
          1e-12 * scale)
        throw InputError("omega must be antisymmetric");

  // A = -g^{-1} omega is the column-operator form of A^k_i = ω_{ij}g^{jk}.
  Mat<T> a = T{-1.0} * (inverse(g) * omega);
  Mat<T> p = T{-1.0} * (a * a);  // AA* with A* = −A

  // Gauge transform to a g-orthonormal frame where AA* is symmetric.
  Mat<T> l = cholesky(g);
  Mat<T> lt = l.transpose();
  Mat<T> lt_inv = inverse(lt);
  Mat<T> p_hat = lt * p * lt_inv;
  Mat<T> s_hat = sym_sqrt(p_hat);
  Mat<T> s = lt_inv * s_hat * lt;

  CompatibleTriple<T> out;
  out.a_op = std::move(a);
  out.j_op = inverse(s) * out.a_op;
  out.g_tilde = s.transpose() * g;
  out.s_op = std::move(s);
  return out;
}

// Compatible triple fields of a chart with ω, with first derivatives of J
// and the full 2-jet of g̃ (needed for its curvature), all at x.
struct CompatibleGeometry {
  CompatibleTriple<double> triple;
  MatrixJet gt_jet;          // jet of g̃
  DenseTensor j_mixed;       // (j,k): J_j{}^k = component k of J(∂_j)
  DenseTensor dj;            // (i,j,k) = ∂_i J_j{}^k
  DenseTensor gamma_tilde;   // Γ of g̃
  DenseTensor nabla_j;       // (i,j,k) = (∇_i J)_j{}^k, ∇ of g̃
  CurvatureData curv_tilde;  // curvature of g̃
};

CompatibleGeometry compatible_geometry(const ChartMetric& m, const Vec& x);

// Covariant derivative of J in a metric whose Christoffel symbols are given:
// (∇_i J)_j{}^k = ∂_i J_j{}^k − Γ^l_{ij} J_l{}^k + Γ^k_{il} J_j{}^l.
DenseTensor nabla_j_from_parts(const DenseTensor& j_mixed,
                               const DenseTensor& dj,
                               const DenseTensor& gamma);

// Shipped charts.
ChartMetric euclidean_chart(int dim);
ChartMetric sphere_chart();              // unit round S², polar (θ, φ)
ChartMetric s2xs2_chart();               // product of unit spheres + Kähler ω
ChartMetric flat_torus_chart();          // 4-torus, g = id, standard ω
ChartMetric fubini_study_chart();        // CP² affine chart (x₁,y₁,x₂,y₂)
ChartMetric thurston_chart(double kappa);  // Thurston base (θ₁..θ₄) + ω_κ

}  // namespace wcs
