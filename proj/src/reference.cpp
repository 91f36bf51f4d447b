#include "schurkit/reference.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace schurkit::ref {

namespace {

Matrix row_gram(const BlockMatrix& a, int i) {
    Matrix g = Matrix::Zero(a.row_dim(i), a.row_dim(i));
    for (int j = 0; j < a.grid_cols(); ++j)
        g += a.block(i, j) * a.block(i, j).adjoint();
    return g;
}

Matrix col_gram(const BlockMatrix& b, int j) {
    Matrix g = Matrix::Zero(b.col_dim(j), b.col_dim(j));
    for (int i = 0; i < b.grid_rows(); ++i)
        g += b.block(i, j).adjoint() * b.block(i, j);
    return g;
}

Matrix dense_row(const BlockMatrix& a, int i) {
    Matrix out(a.row_dim(i), a.total_cols());
    int at = 0;
    for (int j = 0; j < a.grid_cols(); ++j) {
        out.middleCols(at, a.col_dim(j)) = a.block(i, j);
        at += a.col_dim(j);
    }
    return out;
}

Matrix dense_col(const BlockMatrix& b, int j) {
    Matrix out(b.total_rows(), b.col_dim(j));
    int at = 0;
    for (int i = 0; i < b.grid_rows(); ++i) {
        out.middleRows(at, b.row_dim(i)) = b.block(i, j);
        at += b.row_dim(i);
    }
    return out;
}

SchurDecomposition assemble(BlockDiagonal left, BlockMatrix middle, BlockDiagonal right,
                            const Matrix& product) {
    SchurDecomposition dec{std::move(left), std::move(middle), std::move(right), 0.0, 0.0, 0.0};
    dec.middle_norm = operator_norm(flatten(dec.middle));
    const Matrix rebuilt = dec.left.dense() * flatten(dec.middle) * dec.right.dense();
    dec.reconstruction_error = (product - rebuilt).norm();
    dec.reconstruction_error_rel = dec.reconstruction_error / (1.0 + product.norm());
    return dec;
}

} // namespace

BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.grid_rows() != b.grid_rows() || a.grid_cols() != b.grid_cols())
        throw shape_error("ref::schur_product: grid shapes differ");
    int ha = 0, hb = 0;
    if (!a.uniform_block_dim(&ha) || !b.uniform_block_dim(&hb) || ha != hb)
        throw shape_error("ref::schur_product: uniform square blocks of one dimension required");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.grid_rows()) * a.grid_cols());
    for (int i = 0; i < a.grid_rows(); ++i)
        for (int j = 0; j < a.grid_cols(); ++j)
            blocks.push_back(a.block(i, j) * b.block(i, j));
    return BlockMatrix(a.row_dims(), b.col_dims(), std::move(blocks));
}

BlockMatrix schur_tensor_product(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.grid_rows() != b.grid_rows() || a.grid_cols() != b.grid_cols())
        throw shape_error("ref::schur_tensor_product: grid shapes differ");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.grid_rows()) * a.grid_cols());
    for (int i = 0; i < a.grid_rows(); ++i)
        for (int j = 0; j < a.grid_cols(); ++j)
            blocks.push_back(kronecker(a.block(i, j), b.block(i, j)));
    std::vector<int> row_dims(a.grid_rows()), col_dims(a.grid_cols());
    for (int i = 0; i < a.grid_rows(); ++i) row_dims[i] = a.row_dim(i) * b.row_dim(i);
    for (int j = 0; j < a.grid_cols(); ++j) col_dims[j] = a.col_dim(j) * b.col_dim(j);
    return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
}

BlockMatrix scalar_schur_action(const ScalarMatrix& s, const BlockMatrix& b) {
    if (s.rows() != b.grid_rows() || s.cols() != b.grid_cols())
        throw shape_error("ref::scalar_schur_action: multiplier shape does not match the grid");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(b.grid_rows()) * b.grid_cols());
    for (int i = 0; i < b.grid_rows(); ++i)
        for (int j = 0; j < b.grid_cols(); ++j)
            blocks.push_back(s(i, j) * b.block(i, j));
    return BlockMatrix(b.row_dims(), b.col_dims(), std::move(blocks));
}

BlockDiagonal diag_row_gram(const BlockMatrix& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.grid_rows());
    for (int i = 0; i < a.grid_rows(); ++i)
        blocks.push_back(row_gram(a, i));
    return BlockDiagonal(std::move(blocks));
}

BlockDiagonal diag_col_gram(const BlockMatrix& b) {
    std::vector<Matrix> blocks;
    blocks.reserve(b.grid_cols());
    for (int j = 0; j < b.grid_cols(); ++j)
        blocks.push_back(col_gram(b, j));
    return BlockDiagonal(std::move(blocks));
}

double row_norm(const BlockMatrix& a) {
    double best = 0.0;
    for (int i = 0; i < a.grid_rows(); ++i)
        best = std::max(best, operator_norm(row_gram(a, i)));
    return std::sqrt(best);
}

double col_norm(const BlockMatrix& b) {
    double best = 0.0;
    for (int j = 0; j < b.grid_cols(); ++j)
        best = std::max(best, operator_norm(col_gram(b, j)));
    return std::sqrt(best);
}

std::pair<BlockDiagonal, BlockMatrix> row_polar_factor(const BlockMatrix& a) {
    std::vector<Matrix> gram(a.grid_rows());
    std::vector<Matrix> parts(static_cast<std::size_t>(a.grid_rows()) * a.grid_cols());
    for (int i = 0; i < a.grid_rows(); ++i) {
        PolarPair p = right_polar(dense_row(a, i));
        gram[i] = std::move(p.gram_sqrt);
        int at = 0;
        for (int j = 0; j < a.grid_cols(); ++j) {
            parts[i * a.grid_cols() + j] = p.isometry_part.middleCols(at, a.col_dim(j));
            at += a.col_dim(j);
        }
    }
    return {BlockDiagonal(std::move(gram)),
            BlockMatrix(a.row_dims(), a.col_dims(), std::move(parts))};
}

std::pair<BlockMatrix, BlockDiagonal> col_polar_factor(const BlockMatrix& b) {
    std::vector<Matrix> gram(b.grid_cols());
    std::vector<Matrix> parts(static_cast<std::size_t>(b.grid_rows()) * b.grid_cols());
    for (int j = 0; j < b.grid_cols(); ++j) {
        PolarPair p = left_polar(dense_col(b, j));
        gram[j] = std::move(p.gram_sqrt);
        int at = 0;
        for (int i = 0; i < b.grid_rows(); ++i) {
            parts[i * b.grid_cols() + j] = p.isometry_part.middleRows(at, b.row_dim(i));
            at += b.row_dim(i);
        }
    }
    return {BlockMatrix(b.row_dims(), b.col_dims(), std::move(parts)),
            BlockDiagonal(std::move(gram))};
}

SchurDecomposition decompose_schur(const BlockMatrix& a, const BlockMatrix& b) {
    const Matrix product = flatten(ref::schur_product(a, b));
    auto [left, v] = ref::row_polar_factor(a);
    auto [w, right] = ref::col_polar_factor(b);
    return assemble(std::move(left), ref::schur_product(v, w), std::move(right), product);
}

SchurDecomposition decompose_schur_tensor(const BlockMatrix& a, const BlockMatrix& b) {
    const Matrix product = flatten(ref::schur_tensor_product(a, b));
    auto [da, v] = ref::row_polar_factor(a);
    auto [w, db] = ref::col_polar_factor(b);
    std::vector<Matrix> left_blocks(da.size());
    for (int i = 0; i < da.size(); ++i)
        left_blocks[i] = kronecker(da.block(i), Matrix::Identity(b.row_dim(i), b.row_dim(i)));
    std::vector<Matrix> right_blocks(db.size());
    for (int j = 0; j < db.size(); ++j)
        right_blocks[j] = kronecker(Matrix::Identity(a.col_dim(j), a.col_dim(j)), db.block(j));
    return assemble(BlockDiagonal(std::move(left_blocks)), ref::schur_tensor_product(v, w),
                    BlockDiagonal(std::move(right_blocks)), product);
}

std::vector<ExperimentReport> run_trials(const std::vector<int>& dims,
                                         const std::vector<std::uint64_t>& seeds,
                                         const SolverOptions& opts) {
    std::vector<ExperimentReport> reports;
    reports.reserve(dims.size() * seeds.size());
    for (int n : dims)
        for (std::uint64_t seed : seeds)
            reports.push_back(run_witness_experiment(n, seed, opts));
    std::stable_sort(reports.begin(), reports.end(),
                     [](const ExperimentReport& x, const ExperimentReport& y) {
                         return x.n != y.n ? x.n < y.n : x.seed < y.seed;
                     });
    return reports;
}

} // namespace schurkit::ref
