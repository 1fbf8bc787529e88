#include "wcs/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcs/errors.hpp"

namespace wcs {

DenseTensor::DenseTensor(std::vector<int> dims) : dims_(std::move(dims)) {
  size_t total = 1;
  for (int d : dims_) {
    if (d <= 0) throw DimensionError("tensor dimensions must be positive");
    total *= static_cast<size_t>(d);
  }
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * static_cast<size_t>(dims_[i + 1]);
  data_.assign(total, 0.0);
}

size_t DenseTensor::offset(const std::vector<int>& idx) const {
  if (idx.size() != dims_.size())
    throw DimensionError("index rank mismatch: got " +
                         std::to_string(idx.size()) + ", tensor rank " +
                         std::to_string(dims_.size()));
  size_t off = 0;
  for (size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dims_[k])
      throw DimensionError("index out of range on axis " + std::to_string(k));
    off += static_cast<size_t>(idx[k]) * strides_[k];
  }
  return off;
}

double DenseTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& o) {
  if (dims_ != o.dims_) throw DimensionError("tensor shape mismatch in +=");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<int, int>>& pairs) {
  std::vector<bool> a_used(a.rank(), false), b_used(b.rank(), false);
  for (auto [ia, ib] : pairs) {
    if (ia < 0 || ia >= a.rank() || ib < 0 || ib >= b.rank())
      throw DimensionError("contraction axis out of range");
    if (a_used[ia] || b_used[ib])
      throw DimensionError("contraction axis repeated");
    if (a.dims()[ia] != b.dims()[ib])
      throw DimensionError("contracted axes have unequal extents: " +
                           std::to_string(a.dims()[ia]) + " vs " +
                           std::to_string(b.dims()[ib]));
    a_used[ia] = true;
    b_used[ib] = true;
  }

  std::vector<int> a_free, b_free, out_dims, sum_dims;
  for (int i = 0; i < a.rank(); ++i)
    if (!a_used[i]) { a_free.push_back(i); out_dims.push_back(a.dims()[i]); }
  for (int i = 0; i < b.rank(); ++i)
    if (!b_used[i]) { b_free.push_back(i); out_dims.push_back(b.dims()[i]); }
  for (auto [ia, ib] : pairs) { (void)ib; sum_dims.push_back(a.dims()[ia]); }

  DenseTensor out(out_dims.empty() ? std::vector<int>{1} : out_dims);
  const bool scalar_out = out_dims.empty();

  std::vector<int> ai(a.rank(), 0), bi(b.rank(), 0);
  std::vector<int> free_idx(out_dims.size(), 0), sum_idx(pairs.size(), 0);

  // Iterate all free-index combinations; inside, sum over bound indices.
  auto advance = [](std::vector<int>& idx, const std::vector<int>& lim) {
    for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
      if (++idx[k] < lim[k]) return true;
      idx[k] = 0;
    }
    return false;
  };

  std::vector<int> out_lims = out_dims;
  do {
    for (size_t k = 0; k < a_free.size(); ++k) ai[a_free[k]] = free_idx[k];
    for (size_t k = 0; k < b_free.size(); ++k)
      bi[b_free[k]] = free_idx[a_free.size() + k];
    double acc = 0.0;
    std::fill(sum_idx.begin(), sum_idx.end(), 0);
    do {
      for (size_t k = 0; k < pairs.size(); ++k) {
        ai[pairs[k].first] = sum_idx[k];
        bi[pairs[k].second] = sum_idx[k];
      }
      acc += a.at(ai) * b.at(bi);
    } while (!pairs.empty() && advance(sum_idx, sum_dims));
    if (scalar_out)
      out(0) = acc;
    else
      out.at(free_idx) = acc;
  } while (!out_dims.empty() && advance(free_idx, out_lims));

  return out;
}

PPoly PPoly::monomial(int power, double c) {
  if (power < 0) throw InputError("monomial power must be nonnegative");
  PPoly r;
  r.coeffs_.assign(static_cast<size_t>(power) + 1, 0.0);
  r.coeffs_[static_cast<size_t>(power)] = c;
  return r;
}

void PPoly::set_coeff(int q, double c) {
  if (q < 0) throw InputError("coefficient power must be nonnegative");
  if (trunc_ >= 0 && q > trunc_) return;
  if (q >= static_cast<int>(coeffs_.size()))
    coeffs_.resize(static_cast<size_t>(q) + 1, 0.0);
  coeffs_[static_cast<size_t>(q)] = c;
}

int PPoly::degree() const {
  for (int q = static_cast<int>(coeffs_.size()) - 1; q >= 0; --q)
    if (coeffs_[static_cast<size_t>(q)] != 0.0) return q;
  return -1;
}

double PPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double PPoly::eval(double p) const {
  double acc = 0.0;
  for (int q = static_cast<int>(coeffs_.size()) - 1; q >= 0; --q)
    acc = acc * p + coeffs_[static_cast<size_t>(q)];
  return acc;
}

void PPoly::normalize(double eps_rel) {
  const double cut = eps_rel * max_abs_coeff();
  for (double& c : coeffs_)
    if (std::abs(c) <= cut) c = 0.0;
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

void PPoly::clip() {
  if (trunc_ >= 0 && static_cast<int>(coeffs_.size()) > trunc_ + 1)
    coeffs_.resize(static_cast<size_t>(trunc_) + 1);
}

PPoly& PPoly::operator+=(const PPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (size_t q = 0; q < o.coeffs_.size(); ++q) coeffs_[q] += o.coeffs_[q];
  clip();
  return *this;
}

PPoly& PPoly::operator-=(const PPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (size_t q = 0; q < o.coeffs_.size(); ++q) coeffs_[q] -= o.coeffs_[q];
  clip();
  return *this;
}

PPoly operator*(const PPoly& a, const PPoly& b) {
  PPoly r;
  r.trunc_ = (a.trunc_ >= 0) ? a.trunc_ : b.trunc_;
  if (a.coeffs_.empty() || b.coeffs_.empty()) return r;
  size_t n = a.coeffs_.size() + b.coeffs_.size() - 1;
  if (r.trunc_ >= 0) n = std::min(n, static_cast<size_t>(r.trunc_) + 1);
  r.coeffs_.assign(n, 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0.0) continue;
    for (size_t j = 0; j < b.coeffs_.size() && i + j < n; ++j)
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return r;
}

PPoly operator-(const PPoly& a) {
  PPoly r = a;
  for (double& c : r.coeffs_) c = -c;
  return r;
}

std::map<int, double> PPoly::coefficients() const {
  std::map<int, double> m;
  for (int q = 0; q < static_cast<int>(coeffs_.size()); ++q)
    if (coeffs_[static_cast<size_t>(q)] != 0.0)
      m[q] = coeffs_[static_cast<size_t>(q)];
  return m;
}

DenseTensor& PGradedTensor::grade(int q) {
  auto it = grades_.find(q);
  if (it == grades_.end())
    it = grades_.emplace(q, DenseTensor(dims_)).first;
  return it->second;
}

const DenseTensor* PGradedTensor::find_grade(int q) const {
  auto it = grades_.find(q);
  return it == grades_.end() ? nullptr : &it->second;
}

void PGradedTensor::set_grade(int q, DenseTensor t) {
  if (t.dims() != dims_)
    throw DimensionError("graded tensor component shape mismatch");
  grades_[q] = std::move(t);
}

DenseTensor PGradedTensor::eval(double p) const {
  DenseTensor out(dims_);
  for (const auto& [q, t] : grades_) {
    const double pq = std::pow(p, q);
    for (size_t i = 0; i < out.data().size(); ++i)
      out.data()[i] += pq * t.data()[i];
  }
  return out;
}

PPoly PGradedTensor::entry_poly(const std::vector<int>& idx,
                                int truncation) const {
  PPoly r;
  if (truncation >= 0) r.set_truncation(truncation);
  for (const auto& [q, t] : grades_) r.set_coeff(q, t.at(idx));
  return r;
}

int PGradedTensor::max_grade() const {
  return grades_.empty() ? -1 : grades_.rbegin()->first;
}

PPoly ppoly_interpolate(
    const std::vector<std::pair<double, double>>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n == 0) throw InputError("interpolation needs at least one sample");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (samples[i].first == samples[j].first)
        throw InputError("interpolation nodes must be distinct");

  // Newton divided differences, then expand the nested form.
  std::vector<double> dd(n);
  for (int i = 0; i < n; ++i) dd[i] = samples[i].second;
  for (int k = 1; k < n; ++k)
    for (int i = n - 1; i >= k; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (samples[i].first - samples[i - k].first);

  PPoly r;
  for (int k = n - 1; k >= 0; --k) {
    // r = r * (p - x_k) + dd[k]
    PPoly shift = PPoly::monomial(1, 1.0);
    shift.set_coeff(0, -samples[k].first);
    r = r * shift;
    r.set_coeff(0, r.coeff(0) + dd[k]);
  }
  return r;
}

}  // namespace wcs
