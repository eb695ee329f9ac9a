#include "epslab/sampling.hpp"

#include <algorithm>

namespace epslab {

Scalar random_scalar(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

CoeffVector random_coeff_vector(Rng& rng, Index max_index, std::size_t max_support) {
  const std::size_t cap = std::min<std::size_t>(max_support, max_index + 1);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(cap, 1));
  std::uniform_int_distribution<Index> position(0, max_index);
  CoeffVector v;
  const std::size_t want = count(rng);
  while (v.size() < want) v.set(position(rng), random_scalar(rng));
  return v;
}

DirectSumVector random_direct_sum(Rng& rng, Index max_block, Index max_index, std::size_t max_blocks,
                                  std::size_t max_support) {
  const std::size_t cap = std::min<std::size_t>(max_blocks, max_block + 1);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(cap, 1));
  std::uniform_int_distribution<Index> position(0, max_block);
  DirectSumVector u;
  const std::size_t want = count(rng);
  while (u.size() < want) u.set_block(position(rng), random_coeff_vector(rng, max_index, max_support));
  return u;
}

}  // namespace epslab
