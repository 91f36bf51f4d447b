#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "schurkit/blockmat.hpp"

namespace schurkit {

// uniform integer in [lo, hi] by multiply-shift on the raw 64-bit stream;
// no rejection, portable across platforms
int bounded_int(std::mt19937_64& rng, int lo, int hi);

// complex matrix with independent standard-normal real and imaginary parts
Matrix random_matrix(int rows, int cols, std::mt19937_64& rng);

BlockMatrix random_block_matrix(const std::vector<int>& row_dims,
                                const std::vector<int>& col_dims,
                                std::mt19937_64& rng);

// grid x grid of h x h blocks
BlockMatrix random_uniform_block_matrix(int grid, int h, std::mt19937_64& rng);

std::vector<int> random_dims(int count, int lo, int hi, std::mt19937_64& rng);

} // namespace schurkit
