#include "schurkit/random.hpp"

#include <stdexcept>

namespace schurkit {

int bounded_int(std::mt19937_64& rng, int lo, int hi) {
    if (hi < lo)
        throw std::invalid_argument("bounded_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * span;
    return lo + static_cast<int>(wide >> 64);
}

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

BlockMatrix random_block_matrix(const std::vector<int>& row_dims,
                                const std::vector<int>& col_dims, std::mt19937_64& rng) {
    std::vector<Matrix> blocks;
    blocks.reserve(row_dims.size() * col_dims.size());
    for (int r : row_dims)
        for (int c : col_dims)
            blocks.push_back(random_matrix(r, c, rng));
    return BlockMatrix(row_dims, col_dims, std::move(blocks));
}

BlockMatrix random_uniform_block_matrix(int grid, int h, std::mt19937_64& rng) {
    return random_block_matrix(std::vector<int>(grid, h), std::vector<int>(grid, h), rng);
}

std::vector<int> random_dims(int count, int lo, int hi, std::mt19937_64& rng) {
    std::vector<int> dims(count);
    for (int& d : dims)
        d = bounded_int(rng, lo, hi);
    return dims;
}

} // namespace schurkit
