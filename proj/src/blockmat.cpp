#include "schurkit/blockmat.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "schurkit/threading.hpp"

namespace schurkit {

namespace {

std::string grid_str(int i, int j) {
    return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void require_finite(const Matrix& m, const std::string& what) {
    if (!m.allFinite())
        throw numeric_error(what + ": non-finite entry");
}

void require_positive_dims(const std::vector<int>& dims, const std::string& what) {
    if (dims.empty())
        throw shape_error(what + ": empty dimension list");
    for (int d : dims)
        if (d < 1)
            throw shape_error(what + ": dimension " + std::to_string(d) + " is not positive");
}

// identical grid shape, the precondition shared by all three products
void require_same_grid(const BlockMatrix& a, const BlockMatrix& b, const std::string& what) {
    if (a.grid_rows() != b.grid_rows() || a.grid_cols() != b.grid_cols())
        throw shape_error(what + ": grid shapes " + std::to_string(a.grid_rows()) + "x" +
                          std::to_string(a.grid_cols()) + " and " + std::to_string(b.grid_rows()) +
                          "x" + std::to_string(b.grid_cols()) + " differ");
}

} // namespace

// ---- ScalarMatrix --------------------------------------------------------

ScalarMatrix::ScalarMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.cols() < 1)
        throw shape_error("ScalarMatrix: empty matrix");
    require_finite(entries_, "ScalarMatrix");
}

ScalarMatrix ScalarMatrix::ones(int rows, int cols) {
    return ScalarMatrix(Matrix::Ones(rows, cols));
}

ScalarMatrix ScalarMatrix::zero(int rows, int cols) {
    return ScalarMatrix(Matrix::Zero(rows, cols));
}

// ---- BlockMatrix ---------------------------------------------------------

BlockMatrix::BlockMatrix(std::vector<int> row_dims, std::vector<int> col_dims,
                         std::vector<Matrix> blocks)
    : row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)), blocks_(std::move(blocks)) {
    require_positive_dims(row_dims_, "BlockMatrix row_dims");
    require_positive_dims(col_dims_, "BlockMatrix col_dims");
    const std::size_t expected = row_dims_.size() * col_dims_.size();
    if (blocks_.size() != expected)
        throw shape_error("BlockMatrix: got " + std::to_string(blocks_.size()) + " blocks, grid needs " +
                          std::to_string(expected));
    for (int i = 0; i < grid_rows(); ++i) {
        for (int j = 0; j < grid_cols(); ++j) {
            const Matrix& blk = blocks_[i * grid_cols() + j];
            if (blk.rows() != row_dims_[i] || blk.cols() != col_dims_[j])
                throw shape_error("BlockMatrix: block " + grid_str(i, j) + " is " +
                                  std::to_string(blk.rows()) + "x" + std::to_string(blk.cols()) +
                                  ", expected " + std::to_string(row_dims_[i]) + "x" +
                                  std::to_string(col_dims_[j]));
            require_finite(blk, "BlockMatrix block " + grid_str(i, j));
        }
    }
}

BlockMatrix BlockMatrix::zero(std::vector<int> row_dims, std::vector<int> col_dims) {
    std::vector<Matrix> blocks;
    blocks.reserve(row_dims.size() * col_dims.size());
    for (int r : row_dims)
        for (int c : col_dims)
            blocks.push_back(Matrix::Zero(r, c));
    return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
}

BlockMatrix BlockMatrix::block_identity(std::vector<int> dims) {
    std::vector<Matrix> blocks;
    blocks.reserve(dims.size() * dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i)
        for (std::size_t j = 0; j < dims.size(); ++j)
            blocks.push_back(i == j ? Matrix(Matrix::Identity(dims[i], dims[i]))
                                    : Matrix(Matrix::Zero(dims[i], dims[j])));
    std::vector<int> cols = dims;
    return BlockMatrix(std::move(dims), std::move(cols), std::move(blocks));
}

BlockMatrix BlockMatrix::from_scalar(const ScalarMatrix& s) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(s.rows()) * s.cols());
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j)
            blocks.push_back(Matrix::Constant(1, 1, s(i, j)));
    return BlockMatrix(std::vector<int>(s.rows(), 1), std::vector<int>(s.cols(), 1),
                       std::move(blocks));
}

int BlockMatrix::total_rows() const {
    return std::accumulate(row_dims_.begin(), row_dims_.end(), 0);
}

int BlockMatrix::total_cols() const {
    return std::accumulate(col_dims_.begin(), col_dims_.end(), 0);
}

bool BlockMatrix::uniform_block_dim(int* h) const {
    const int d = row_dims_[0];
    for (int r : row_dims_)
        if (r != d) return false;
    for (int c : col_dims_)
        if (c != d) return false;
    if (h) *h = d;
    return true;
}

BlockMatrix BlockMatrix::adjoint() const {
    std::vector<Matrix> blocks;
    blocks.reserve(blocks_.size());
    for (int j = 0; j < grid_cols(); ++j)
        for (int i = 0; i < grid_rows(); ++i)
            blocks.push_back(block(i, j).adjoint());
    return BlockMatrix(col_dims_, row_dims_, std::move(blocks));
}

// ---- BlockDiagonal -------------------------------------------------------

BlockDiagonal::BlockDiagonal(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty())
        throw shape_error("BlockDiagonal: no blocks");
    dims_.reserve(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Matrix& blk = blocks_[i];
        if (blk.rows() != blk.cols() || blk.rows() < 1)
            throw shape_error("BlockDiagonal: block " + std::to_string(i) + " is not square");
        require_finite(blk, "BlockDiagonal block " + std::to_string(i));
        const double scale = std::max(blk.norm(), 1.0);
        if ((blk - blk.adjoint()).norm() > kPsdTolerance * scale)
            throw numeric_error("BlockDiagonal: block " + std::to_string(i) + " is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Matrix> es(blk, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
        if (lo < -kPsdTolerance * hi)
            throw numeric_error("BlockDiagonal: block " + std::to_string(i) +
                                " has negative eigenvalue " + std::to_string(lo));
        dims_.push_back(static_cast<int>(blk.rows()));
    }
}

int BlockDiagonal::total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), 0);
}

Matrix BlockDiagonal::dense() const {
    const int n = total_dim();
    Matrix out = Matrix::Zero(n, n);
    int at = 0;
    for (const Matrix& blk : blocks_) {
        out.block(at, at, blk.rows(), blk.cols()) = blk;
        at += static_cast<int>(blk.rows());
    }
    return out;
}

// ---- products ------------------------------------------------------------

BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b) {
    require_same_grid(a, b, "schur_product");
    const int rows = a.grid_rows();
    const int cols = a.grid_cols();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (a.block(i, j).cols() != b.block(i, j).rows())
                throw shape_error("schur_product: blocks at " + grid_str(i, j) +
                                  " are not composable");
    int ha = 0, hb = 0;
    if (!a.uniform_block_dim(&ha) || !b.uniform_block_dim(&hb) || ha != hb)
        throw shape_error("schur_product: uniform square blocks of one dimension required");

    std::vector<Matrix> blocks(static_cast<std::size_t>(rows) * cols);
#pragma omp parallel for collapse(2) schedule(static) num_threads(threads::max_threads())
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            blocks[i * cols + j] = a.block(i, j) * b.block(i, j);
    return BlockMatrix(a.row_dims(), b.col_dims(), std::move(blocks));
}

BlockMatrix schur_tensor_product(const BlockMatrix& a, const BlockMatrix& b) {
    require_same_grid(a, b, "schur_tensor_product");
    const int rows = a.grid_rows();
    const int cols = a.grid_cols();
    std::vector<Matrix> blocks(static_cast<std::size_t>(rows) * cols);
#pragma omp parallel for collapse(2) schedule(static) num_threads(threads::max_threads())
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            blocks[i * cols + j] = kronecker(a.block(i, j), b.block(i, j));

    std::vector<int> row_dims(rows), col_dims(cols);
    for (int i = 0; i < rows; ++i) row_dims[i] = a.row_dim(i) * b.row_dim(i);
    for (int j = 0; j < cols; ++j) col_dims[j] = a.col_dim(j) * b.col_dim(j);
    return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
}

BlockMatrix scalar_schur_action(const ScalarMatrix& s, const BlockMatrix& b) {
    if (s.rows() != b.grid_rows() || s.cols() != b.grid_cols())
        throw shape_error("scalar_schur_action: multiplier is " + std::to_string(s.rows()) + "x" +
                          std::to_string(s.cols()) + ", grid is " + std::to_string(b.grid_rows()) +
                          "x" + std::to_string(b.grid_cols()));
    const int rows = b.grid_rows();
    const int cols = b.grid_cols();
    std::vector<Matrix> blocks(static_cast<std::size_t>(rows) * cols);
#pragma omp parallel for collapse(2) schedule(static) num_threads(threads::max_threads())
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            blocks[i * cols + j] = s(i, j) * b.block(i, j);
    return BlockMatrix(b.row_dims(), b.col_dims(), std::move(blocks));
}

ScalarMatrix build_commutator_multiplier(const std::vector<double>& lambdas) {
    if (lambdas.empty())
        throw shape_error("build_commutator_multiplier: empty list");
    const int n = static_cast<int>(lambdas.size());
    Matrix s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s(i, j) = Complex(lambdas[i] - lambdas[j], 0.0);
    return ScalarMatrix(std::move(s));
}

// ---- norms and grams -----------------------------------------------------

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

} // namespace

double row_norm(const BlockMatrix& a) {
    const int rows = a.grid_rows();
    std::vector<double> per_row(rows);
#pragma omp parallel for schedule(static) num_threads(threads::max_threads())
    for (int i = 0; i < rows; ++i)
        per_row[i] = operator_norm(row_gram(a, i));
    return std::sqrt(*std::max_element(per_row.begin(), per_row.end()));
}

double col_norm(const BlockMatrix& b) {
    const int cols = b.grid_cols();
    std::vector<double> per_col(cols);
#pragma omp parallel for schedule(static) num_threads(threads::max_threads())
    for (int j = 0; j < cols; ++j)
        per_col[j] = operator_norm(col_gram(b, j));
    return std::sqrt(*std::max_element(per_col.begin(), per_col.end()));
}

double row_norm(const ScalarMatrix& a) {
    double best = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        best = std::max(best, a.entries().row(i).norm());
    return best;
}

double col_norm(const ScalarMatrix& b) {
    double best = 0.0;
    for (int j = 0; j < b.cols(); ++j)
        best = std::max(best, b.entries().col(j).norm());
    return best;
}

BlockDiagonal diag_row_gram(const BlockMatrix& a) {
    const int rows = a.grid_rows();
    std::vector<Matrix> blocks(rows);
#pragma omp parallel for schedule(static) num_threads(threads::max_threads())
    for (int i = 0; i < rows; ++i)
        blocks[i] = row_gram(a, i);
    return BlockDiagonal(std::move(blocks));
}

BlockDiagonal diag_col_gram(const BlockMatrix& b) {
    const int cols = b.grid_cols();
    std::vector<Matrix> blocks(cols);
#pragma omp parallel for schedule(static) num_threads(threads::max_threads())
    for (int j = 0; j < cols; ++j)
        blocks[j] = col_gram(b, j);
    return BlockDiagonal(std::move(blocks));
}

// ---- dense plumbing ------------------------------------------------------

Matrix flatten(const BlockMatrix& a) {
    Matrix out = Matrix::Zero(a.total_rows(), a.total_cols());
    int at_row = 0;
    for (int i = 0; i < a.grid_rows(); ++i) {
        int at_col = 0;
        for (int j = 0; j < a.grid_cols(); ++j) {
            out.block(at_row, at_col, a.row_dim(i), a.col_dim(j)) = a.block(i, j);
            at_col += a.col_dim(j);
        }
        at_row += a.row_dim(i);
    }
    return out;
}

BlockMatrix split(const Matrix& dense, std::vector<int> row_dims, std::vector<int> col_dims) {
    require_positive_dims(row_dims, "split row_dims");
    require_positive_dims(col_dims, "split col_dims");
    const int rows = std::accumulate(row_dims.begin(), row_dims.end(), 0);
    const int cols = std::accumulate(col_dims.begin(), col_dims.end(), 0);
    if (dense.rows() != rows || dense.cols() != cols)
        throw shape_error("split: dense shape " + std::to_string(dense.rows()) + "x" +
                          std::to_string(dense.cols()) + " does not match signatures " +
                          std::to_string(rows) + "x" + std::to_string(cols));
    std::vector<Matrix> blocks;
    blocks.reserve(row_dims.size() * col_dims.size());
    int at_row = 0;
    for (int r : row_dims) {
        int at_col = 0;
        for (int c : col_dims) {
            blocks.push_back(dense.block(at_row, at_col, r, c));
            at_col += c;
        }
        at_row += r;
    }
    return BlockMatrix(std::move(row_dims), std::move(col_dims), std::move(blocks));
}

double operator_norm(const Matrix& m) {
    require_finite(m, "operator_norm");
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b) {
    require_same_grid(a, b, "operator+");
    if (a.row_dims() != b.row_dims() || a.col_dims() != b.col_dims())
        throw shape_error("operator+: dimension signatures differ");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.grid_rows()) * a.grid_cols());
    for (int i = 0; i < a.grid_rows(); ++i)
        for (int j = 0; j < a.grid_cols(); ++j)
            blocks.push_back(a.block(i, j) + b.block(i, j));
    return BlockMatrix(a.row_dims(), a.col_dims(), std::move(blocks));
}

BlockMatrix operator*(Complex c, const BlockMatrix& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.grid_rows()) * a.grid_cols());
    for (int i = 0; i < a.grid_rows(); ++i)
        for (int j = 0; j < a.grid_cols(); ++j)
            blocks.push_back(c * a.block(i, j));
    return BlockMatrix(a.row_dims(), a.col_dims(), std::move(blocks));
}

} // namespace schurkit
