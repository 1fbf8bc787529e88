#pragma once

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace wcs {

// Dense multi-index real array, row-major flat storage with precomputed
// strides. The universal carrier for g, omega, J, Gamma, R and nabla-J
// components.
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<int> dims);

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  double at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

  // Convenience accessors for the common low ranks.
  double& operator()(int i) { return data_[static_cast<size_t>(i)]; }
  double operator()(int i) const { return data_[static_cast<size_t>(i)]; }
  double& operator()(int i, int j) { return data_[i * strides_[0] + j]; }
  double operator()(int i, int j) const { return data_[i * strides_[0] + j]; }
  double& operator()(int i, int j, int k) {
    return data_[i * strides_[0] + j * strides_[1] + k];
  }
  double operator()(int i, int j, int k) const {
    return data_[i * strides_[0] + j * strides_[1] + k];
  }
  double& operator()(int i, int j, int k, int l) {
    return data_[i * strides_[0] + j * strides_[1] + k * strides_[2] + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return data_[i * strides_[0] + j * strides_[1] + k * strides_[2] + l];
  }

  double max_abs() const;

  DenseTensor& operator+=(const DenseTensor& o);
  DenseTensor& operator*=(double s);

 private:
  size_t offset(const std::vector<int>& idx) const;

  std::vector<int> dims_;
  std::vector<size_t> strides_;
  std::vector<double> data_;
};

// Einstein summation over the listed (index-of-a, index-of-b) pairs.
// Remaining indices are ordered a-first then b.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<int, int>>& pairs);

// Polynomial in the integer bundle parameter p with real coefficients.
// Coefficient storage is dense by power; absent powers are zero. An optional
// truncation degree makes products exact for the graded curvature chain
// (grades <= 2 per factor bound the degree a priori).
class PPoly {
 public:
  PPoly() = default;
  PPoly(double c) { coeffs_.assign(1, c); }  // NOLINT: constants promote
  static PPoly monomial(int power, double c);

  int truncation() const { return trunc_; }
  void set_truncation(int deg) { trunc_ = deg; clip(); }

  double coeff(int q) const {
    return (q >= 0 && q < static_cast<int>(coeffs_.size())) ? coeffs_[q] : 0.0;
  }
  void set_coeff(int q, double c);
  int degree() const;  // -1 for the zero polynomial
  double max_abs_coeff() const;
  bool is_zero() const { return degree() < 0; }

  double eval(double p) const;

  // Drops coefficients below eps_rel * max|coeff| to exact zero and trims.
  void normalize(double eps_rel = 1e-9);

  PPoly& operator+=(const PPoly& o);
  PPoly& operator-=(const PPoly& o);
  friend PPoly operator+(PPoly a, const PPoly& b) { return a += b; }
  friend PPoly operator-(PPoly a, const PPoly& b) { return a -= b; }
  friend PPoly operator*(const PPoly& a, const PPoly& b);
  friend PPoly operator-(const PPoly& a);

  std::map<int, double> coefficients() const;

 private:
  void clip();

  std::vector<double> coeffs_;
  int trunc_ = -1;
};

// Tensor with a grading by powers of p: evaluation at numeric p equals
// sum_q p^q * grades[q], elementwise. Houses the p-decomposition of the
// bundle curvature.
class PGradedTensor {
 public:
  PGradedTensor() = default;
  explicit PGradedTensor(std::vector<int> dims) : dims_(std::move(dims)) {}

  const std::vector<int>& dims() const { return dims_; }
  const std::map<int, DenseTensor>& grades() const { return grades_; }

  DenseTensor& grade(int q);
  const DenseTensor* find_grade(int q) const;
  void set_grade(int q, DenseTensor t);

  DenseTensor eval(double p) const;
  PPoly entry_poly(const std::vector<int>& idx, int truncation = -1) const;
  int max_grade() const;

 private:
  std::vector<int> dims_;
  std::map<int, DenseTensor> grades_;
};

// Unique interpolating polynomial through the samples (p_i, value_i), built
// with Newton divided differences. Cross-check oracle for the grade-carrying
// arithmetic.
PPoly ppoly_interpolate(const std::vector<std::pair<double, double>>& samples);

}  // namespace wcs
