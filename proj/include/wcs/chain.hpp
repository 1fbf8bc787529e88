#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <type_traits>
#include <vector>

#include "wcs/errors.hpp"
#include "wcs/smallmat.hpp"
#include "wcs/tensor.hpp"

namespace wcs {

template <class S>
struct ChainSumResult {
  S value{};
  double term_scale = 0.0;  // accumulated magnitude of individual terms
};

namespace detail {

inline int permutation_sign(const std::vector<int>& s) {
  int inv = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) ++inv;
  return (inv & 1) ? -1 : 1;
}

inline double term_magnitude(double v) { return std::abs(v); }
inline double term_magnitude(const PPoly& v) { return v.max_abs_coeff(); }

}  // namespace detail

// A chain term together with an explicit magnitude. The magnitude feeds
// term_scale and should measure the size of the quantities that were summed
// to produce value (e.g. the diagonal of a matrix product before tracing),
// so it stays meaningful when the value itself cancels to zero.
template <class S>
struct ScaledTerm {
  S value{};
  double magnitude = 0.0;
};

// Signed sum over all permutations sigma of {0,...,D-1}:
//
//   sum_sigma sgn(sigma) * term(sigma)
//
// The entries of sigma group into a leading singleton when D is odd followed
// by consecutive pairs (sigma_{s+2k}, sigma_{s+2k+1}), s = D mod 2. If bit k
// of prune_mask is set, term is antisymmetric under swapping pair k, so only
// ordered pairs are visited and the contribution is doubled.
//
// The sum is chunked by the value of sigma_0; chunks are evaluated in natural
// order within each worker and the partial results are combined in ascending
// chunk order, so the result is bit-identical for any thread count.
template <class S, class TermFn>
ChainSumResult<S> signed_permutation_sum(int D, TermFn&& term,
                                         unsigned prune_mask, int threads) {
  if (D < 2) throw DimensionError("permutation sum needs at least 2 indices");
  if (threads < 1) throw InputError("thread count must be positive");
  const int start = D % 2;
  const int npairs = (D - start) / 2;

  double mult = 1.0;
  for (int k = 0; k < npairs; ++k)
    if (prune_mask & (1u << k)) mult *= 2.0;

  std::vector<ChainSumResult<S>> partial(static_cast<size_t>(D));
  std::vector<int> chunk_order(static_cast<size_t>(D));
  std::iota(chunk_order.begin(), chunk_order.end(), 0);

  auto run_chunk = [&](int c) {
    ChainSumResult<S> acc;
    std::vector<int> rest;
    for (int v = 0; v < D; ++v)
      if (v != c) rest.push_back(v);
    std::vector<int> sigma(static_cast<size_t>(D));
    sigma[0] = c;
    do {
      std::copy(rest.begin(), rest.end(), sigma.begin() + 1);
      bool keep = true;
      for (int k = 0; k < npairs && keep; ++k)
        if ((prune_mask & (1u << k)) &&
            sigma[static_cast<size_t>(start + 2 * k)] >
                sigma[static_cast<size_t>(start + 2 * k + 1)])
          keep = false;
      if (!keep) continue;
      auto t = term(static_cast<const std::vector<int>&>(sigma));
      S v;
      if constexpr (std::is_same_v<decltype(t), ScaledTerm<S>>) {
        acc.term_scale += t.magnitude * mult;
        v = std::move(t.value);
      } else {
        acc.term_scale += detail::term_magnitude(t) * mult;
        v = std::move(t);
      }
      if (detail::permutation_sign(sigma) < 0)
        acc.value -= v;
      else
        acc.value += v;
    } while (std::next_permutation(rest.begin(), rest.end()));
    partial[static_cast<size_t>(c)] = std::move(acc);
  };

  if (threads == 1) {
    for (int c = 0; c < D; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int c = w; c < D; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  ChainSumResult<S> total;
  for (int c = 0; c < D; ++c) {
    total.value += partial[static_cast<size_t>(c)].value;
    total.term_scale += partial[static_cast<size_t>(c)].term_scale;
  }
  if (mult != 1.0) total.value = S{mult} * total.value;
  return total;
}

// Matrix-product realization of the curvature chain
//
//   sum_sigma sgn(sigma) tr( P(sigma_{D-2}, sigma_{D-1}) ... P(sigma_1,
//   sigma_2) F(sigma_0) )
//
// with F(s) the leading single-index matrix and P(i,j) the double-index
// matrices, all D x D. D must have the form 4n+1. All pair matrices are
// assumed antisymmetric in (i,j), enabling full pruning; pass a restricted
// prune_mask when some factor lacks that symmetry.
template <class S>
ChainSumResult<S> signed_chain_sum(const std::vector<Mat<S>>& first,
                                   const std::vector<Mat<S>>& pair_mats,
                                   int threads,
                                   unsigned prune_mask = ~0u) {
  const int D = static_cast<int>(first.size());
  if (D < 5 || D % 2 == 0)
    throw DimensionError("chain sum requires an odd index count >= 5");
  if (static_cast<int>(pair_mats.size()) != D * D)
    throw DimensionError("pair matrix table must have D*D entries");
  const int npairs = (D - 1) / 2;
  prune_mask &= (1u << npairs) - 1u;

  // The magnitude reported for each term is the summed magnitude of the
  // diagonal of the matrix product, so term_scale remains a usable reference
  // scale even when every trace cancels internally.
  auto term = [&](const std::vector<int>& sigma) -> ScaledTerm<S> {
    Mat<S> m = first[static_cast<size_t>(sigma[0])];
    for (int k = 1; k + 1 < D; k += 2)
      m = pair_mats[static_cast<size_t>(sigma[static_cast<size_t>(k)]) * D +
                    sigma[static_cast<size_t>(k + 1)]] *
          m;
    ScaledTerm<S> t;
    for (int i = 0; i < D; ++i) {
      t.magnitude += detail::term_magnitude(m(i, i));
      t.value += m(i, i);
    }
    return t;
  };
  return signed_permutation_sum<S>(D, term, prune_mask, threads);
}

// sum_sigma sgn(sigma) J_{sigma_0 sigma_1} ... J_{sigma_{2m-2} sigma_{2m-1}}
// for an antisymmetric 2m x 2m matrix of lowered components; equals
// 2^m m! Pf(J).
double pfaffian_sum(const DenseTensor& j_low, int threads = 1);

}  // namespace wcs
