#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "schurkit/blockmat.hpp"
#include "schurkit/polar.hpp"
#include "schurkit/harness.hpp"
#include "schurkit/random.hpp"
#include "schurkit/reference.hpp"
#include "schurkit/thinset.hpp"

using namespace schurkit;

// The reference kernels must not just approximate the parallel ones: they run
// the identical per-element arithmetic, so results agree to the last bit.

namespace {

bool same_bits(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        return false;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (x(i, j) != y(i, j))
                return false;
    return true;
}

bool same_bits(const BlockMatrix& x, const BlockMatrix& y) {
    if (x.row_dims() != y.row_dims() || x.col_dims() != y.col_dims())
        return false;
    for (int i = 0; i < x.grid_rows(); ++i)
        for (int j = 0; j < x.grid_cols(); ++j)
            if (!same_bits(x.block(i, j), y.block(i, j)))
                return false;
    return true;
}

bool same_bits(const BlockDiagonal& x, const BlockDiagonal& y) {
    if (x.size() != y.size())
        return false;
    for (int i = 0; i < x.size(); ++i)
        if (!same_bits(x.block(i), y.block(i)))
            return false;
    return true;
}

} // namespace

TEST_CASE("products agree bit for bit with the serial reference") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 2 + rep % 4;
        const auto a = random_uniform_block_matrix(n, 2, rng);
        const auto b = random_uniform_block_matrix(n, 2, rng);
        CHECK(same_bits(schur_product(a, b), ref::schur_product(a, b)));
        CHECK(same_bits(schur_tensor_product(a, b), ref::schur_tensor_product(a, b)));
    }
}

TEST_CASE("rectangular tensor products agree with the serial reference") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 4; ++rep) {
        const auto rows_a = random_dims(3, 1, 3, rng);
        const auto cols_a = random_dims(3, 1, 3, rng);
        const auto rows_b = random_dims(3, 1, 3, rng);
        const auto cols_b = random_dims(3, 1, 3, rng);
        const auto a = random_block_matrix(rows_a, cols_a, rng);
        const auto b = random_block_matrix(rows_b, cols_b, rng);
        CHECK(same_bits(schur_tensor_product(a, b), ref::schur_tensor_product(a, b)));
    }
}

TEST_CASE("scalar action agrees with the serial reference") {
    std::mt19937_64 rng(43);
    const auto b = random_uniform_block_matrix(3, 2, rng);
    RealMatrix coeff(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            coeff(i, j) = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    const ScalarMatrix s(coeff);
    CHECK(same_bits(scalar_schur_action(s, b), ref::scalar_schur_action(s, b)));
}

TEST_CASE("grams and norms agree bit for bit with the serial reference") {
    std::mt19937_64 rng(44);
    for (int rep = 0; rep < 6; ++rep) {
        const std::vector<int> rd(1 + rep % 4, 2), cd(2 + rep % 3, 2);
        const auto a = random_block_matrix(rd, cd, rng);
        CHECK(same_bits(diag_row_gram(a), ref::diag_row_gram(a)));
        CHECK(same_bits(diag_col_gram(a), ref::diag_col_gram(a)));
        CHECK(row_norm(a) == ref::row_norm(a));
        CHECK(col_norm(a) == ref::col_norm(a));
    }
}

TEST_CASE("polar factors agree bit for bit with the serial reference") {
    std::mt19937_64 rng(45);
    for (int rep = 0; rep < 4; ++rep) {
        const auto a = random_uniform_block_matrix(3, 2, rng);
        const auto [da, va] = row_polar_factor(a);
        const auto [ra, wa] = ref::row_polar_factor(a);
        CHECK(same_bits(da, ra));
        CHECK(same_bits(va, wa));
        const auto [vb, db] = col_polar_factor(a);
        const auto [wb, rb] = ref::col_polar_factor(a);
        CHECK(same_bits(db, rb));
        CHECK(same_bits(vb, wb));
    }
}

TEST_CASE("whole decompositions agree bit for bit with the serial reference") {
    std::mt19937_64 rng(46);
    for (int rep = 0; rep < 3; ++rep) {
        const auto a = random_uniform_block_matrix(3, 2, rng);
        const auto b = random_uniform_block_matrix(3, 2, rng);

        const auto d = decompose_schur(a, b);
        const auto r = ref::decompose_schur(a, b);
        CHECK(same_bits(d.left, r.left));
        CHECK(same_bits(d.middle, r.middle));
        CHECK(same_bits(d.right, r.right));
        CHECK(d.middle_norm == r.middle_norm);
        CHECK(d.reconstruction_error == r.reconstruction_error);
        CHECK(d.reconstruction_error_rel == r.reconstruction_error_rel);

        const auto dt = decompose_schur_tensor(a, b);
        const auto rt = ref::decompose_schur_tensor(a, b);
        CHECK(same_bits(dt.left, rt.left));
        CHECK(same_bits(dt.middle, rt.middle));
        CHECK(same_bits(dt.right, rt.right));
        CHECK(dt.middle_norm == rt.middle_norm);
        CHECK(dt.reconstruction_error == rt.reconstruction_error);
    }
}

TEST_CASE("trial batches agree field by field with the serial reference") {
    const std::vector<int> dims = {2, 3};
    const std::vector<std::uint64_t> seeds = {1, 2, 3};
    const auto par = run_trials(dims, seeds, SolverOptions{});
    const auto ser = ref::run_trials(dims, seeds, SolverOptions{});
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < par.size(); ++k) {
        CHECK(par[k].n == ser[k].n);
        CHECK(par[k].seed == ser[k].seed);
        CHECK(par[k].schatten1_raw == ser[k].schatten1_raw);
        CHECK(par[k].max_value == ser[k].max_value);
        CHECK(par[k].max_times_sqrt_n == ser[k].max_times_sqrt_n);
        CHECK(par[k].upper_bound_check == ser[k].upper_bound_check);
        CHECK(par[k].semicircle_f_mean == ser[k].semicircle_f_mean);
        CHECK(par[k].support_count == ser[k].support_count);
        CHECK(par[k].iterations == ser[k].iterations);
        CHECK(par[k].converged == ser[k].converged);
    }
}
