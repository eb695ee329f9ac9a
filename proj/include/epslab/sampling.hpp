#pragma once

#include <cstdint>
#include <random>

#include "epslab/spaces.hpp"

namespace epslab {

using Rng = std::mt19937_64;

/// Complex scalar with independent standard normal parts.
Scalar random_scalar(Rng& rng);

/// Random vector with 1..max_support entries at indices in [0, max_index].
CoeffVector random_coeff_vector(Rng& rng, Index max_index, std::size_t max_support);

/// Random vector with 1..max_blocks nonzero blocks at positions in [0, max_block].
DirectSumVector random_direct_sum(Rng& rng, Index max_block, Index max_index, std::size_t max_blocks,
                                  std::size_t max_support);

}  // namespace epslab
