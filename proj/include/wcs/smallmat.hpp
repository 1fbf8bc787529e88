#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wcs/errors.hpp"
#include "wcs/hyperdual.hpp"

namespace wcs {

inline double sqrt(double x) { return std::sqrt(x); }

// Small square matrix over an arbitrary ring-like scalar (double, HyperDual,
// polynomials). Row-major. Dimensions here are tiny (<= 11), so everything is
// straightforward dense arithmetic.
template <class T>
struct Mat {
  int n = 0;
  std::vector<T> a;

  Mat() = default;
  explicit Mat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, T{}) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = T{1.0};
    return m;
  }

  Mat transpose() const {
    Mat r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
};

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const T& xik = x(i, k);
      for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

template <class T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

template <class T>
Mat<T> operator*(const T& s, const Mat<T>& y) {
  Mat<T> r(y.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * y.a[i];
  return r;
}

template <class T>
std::vector<T> operator*(const Mat<T>& m, const std::vector<T>& v) {
  std::vector<T> r(m.n, T{});
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r[i] += m(i, j) * v[j];
  return r;
}

// Gauss-Jordan inverse with partial pivoting on the scalar's value part.
template <class T>
Mat<T> inverse(Mat<T> m) {
  const int n = m.n;
  Mat<T> inv = Mat<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(m(col, col)));
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(value_of(m(r, col)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) throw DegeneracyError("singular matrix in inverse()");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const T d = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = m(r, col);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Cholesky factor L with G = L L^T. Throws if a pivot is not positive, which
// doubles as the positive-definiteness check for metric evaluations.
template <class T>
Mat<T> cholesky(const Mat<T>& g) {
  const int n = g.n;
  Mat<T> L(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      T s = g(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (value_of(s) <= 0.0)
          throw DegeneracyError("matrix not positive definite in cholesky()");
        L(i, i) = sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return L;
}

template <class T>
double max_abs_value(const Mat<T>& m) {
  double r = 0.0;
  for (const T& x : m.a) r = std::max(r, std::abs(value_of(x)));
  return r;
}

}  // namespace wcs
