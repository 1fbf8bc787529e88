#pragma once

#include <cmath>

namespace wcs {

// Second-order forward-mode number with two independent infinitesimal
// directions: x = v + d1*e1 + d2*e2 + d12*e1*e2, e1^2 = e2^2 = 0.
// Evaluating f on HyperDual inputs yields f, two directional derivatives and
// the mixed second derivative, all exact to roundoff.
struct HyperDual {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d12 = 0.0;

  HyperDual() = default;
  HyperDual(double value) : v(value) {}  // NOLINT: implicit promotion intended
  HyperDual(double value, double e1, double e2, double e12)
      : v(value), d1(e1), d2(e2), d12(e12) {}
};

inline HyperDual operator+(const HyperDual& a, const HyperDual& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12};
}
inline HyperDual operator-(const HyperDual& a, const HyperDual& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12};
}
inline HyperDual operator-(const HyperDual& a) {
  return {-a.v, -a.d1, -a.d2, -a.d12};
}
inline HyperDual operator*(const HyperDual& a, const HyperDual& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + a.v * b.d2,
          a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12};
}
inline HyperDual inverse(const HyperDual& b) {
  const double iv = 1.0 / b.v;
  const double iv2 = iv * iv;
  return {iv, -b.d1 * iv2, -b.d2 * iv2,
          2.0 * b.d1 * b.d2 * iv2 * iv - b.d12 * iv2};
}
inline HyperDual operator/(const HyperDual& a, const HyperDual& b) {
  return a * inverse(b);
}

inline HyperDual& operator+=(HyperDual& a, const HyperDual& b) { return a = a + b; }
inline HyperDual& operator-=(HyperDual& a, const HyperDual& b) { return a = a - b; }
inline HyperDual& operator*=(HyperDual& a, const HyperDual& b) { return a = a * b; }
inline HyperDual& operator/=(HyperDual& a, const HyperDual& b) { return a = a / b; }

// Chain rule for a smooth univariate f applied to a hyper-dual argument.
inline HyperDual lift(const HyperDual& a, double f, double fp, double fpp) {
  return {f, fp * a.d1, fp * a.d2, fp * a.d12 + fpp * a.d1 * a.d2};
}

inline HyperDual sqrt(const HyperDual& a) {
  const double s = std::sqrt(a.v);
  return lift(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline HyperDual sin(const HyperDual& a) {
  return lift(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}
inline HyperDual cos(const HyperDual& a) {
  return lift(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}
inline HyperDual exp(const HyperDual& a) {
  const double e = std::exp(a.v);
  return lift(a, e, e, e);
}
inline HyperDual log(const HyperDual& a) {
  return lift(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

// Double passthroughs so generic code can call these unqualified on either
// scalar type from inside the namespace.
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }

inline double value_of(double x) { return x; }
inline double value_of(const HyperDual& x) { return x.v; }

}  // namespace wcs
