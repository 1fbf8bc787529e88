#include "wcs/chain.hpp"

#include <cmath>

namespace wcs {

double pfaffian_sum(const DenseTensor& j_low, int threads) {
  if (j_low.rank() != 2 || j_low.dims()[0] != j_low.dims()[1])
    throw DimensionError("pfaffian sum requires a square rank-2 tensor");
  const int d = j_low.dims()[0];
  if (d % 2 != 0)
    throw DimensionError("pfaffian sum requires even dimension");
  const double scale = std::max(1.0, j_low.max_abs());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (std::abs(j_low(i, j) + j_low(j, i)) > 1e-12 * scale)
        throw InputError("pfaffian sum requires an antisymmetric matrix");

  auto term = [&](const std::vector<int>& sigma) -> double {
    double prod = 1.0;
    for (int k = 0; k + 1 < d; k += 2)
      prod *= j_low(sigma[static_cast<size_t>(k)],
                    sigma[static_cast<size_t>(k + 1)]);
    return prod;
  };
  const unsigned mask = (1u << (d / 2)) - 1u;
  return signed_permutation_sum<double>(d, term, mask, threads).value;
}

}  // namespace wcs
