#pragma once
//
// Block-matrix data model and the two Schur-type products.
//
// A BlockMatrix is a finite I x J grid of dense complex blocks; block (i,j)
// maps the j-th input space (dimension col_dims[j]) into the i-th output
// space (dimension row_dims[i]). schur_product multiplies matching blocks
// (uniform square blocks required), schur_tensor_product takes blockwise
// Kronecker products (arbitrary rectangular blocks).
//

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "schurkit/errors.hpp"

namespace schurkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Dense complex matrix with finite entries; houses Schur multipliers,
// witnesses and the (R, C) factor pairs.
class ScalarMatrix {
public:
    explicit ScalarMatrix(Matrix entries);

    static ScalarMatrix ones(int rows, int cols);
    static ScalarMatrix zero(int rows, int cols);

    int rows() const { return static_cast<int>(entries_.rows()); }
    int cols() const { return static_cast<int>(entries_.cols()); }
    const Matrix& entries() const { return entries_; }
    Complex operator()(int i, int j) const { return entries_(i, j); }

private:
    Matrix entries_;
};

// Immutable after construction; all blocks validated against the dimension
// signatures and rejected on non-finite entries.
class BlockMatrix {
public:
    // blocks in row-major grid order: blocks[i * col_dims.size() + j]
    BlockMatrix(std::vector<int> row_dims, std::vector<int> col_dims,
                std::vector<Matrix> blocks);

    static BlockMatrix zero(std::vector<int> row_dims, std::vector<int> col_dims);
    // square grid with identity blocks on the diagonal
    static BlockMatrix block_identity(std::vector<int> dims);
    // embed a scalar matrix as a grid of 1x1 blocks
    static BlockMatrix from_scalar(const ScalarMatrix& s);

    int grid_rows() const { return static_cast<int>(row_dims_.size()); }
    int grid_cols() const { return static_cast<int>(col_dims_.size()); }
    const std::vector<int>& row_dims() const { return row_dims_; }
    const std::vector<int>& col_dims() const { return col_dims_; }
    int row_dim(int i) const { return row_dims_[i]; }
    int col_dim(int j) const { return col_dims_[j]; }
    const Matrix& block(int i, int j) const { return blocks_[i * grid_cols() + j]; }

    int total_rows() const;
    int total_cols() const;

    // true iff every block is h x h for a single h (the fixed-H setting);
    // h is written through the out pointer when given
    bool uniform_block_dim(int* h = nullptr) const;

    // blockwise adjoint: (A*)_{ji} = A_{ij}^*
    BlockMatrix adjoint() const;

private:
    std::vector<int> row_dims_;
    std::vector<int> col_dims_;
    std::vector<Matrix> blocks_;
};

// List of square Hermitian PSD blocks (positive within kPsdTolerance,
// relative to the block norm); houses diag(AA*)^1/2 and diag(B*B)^1/2.
class BlockDiagonal {
public:
    explicit BlockDiagonal(std::vector<Matrix> blocks);

    int size() const { return static_cast<int>(blocks_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    const Matrix& block(int i) const { return blocks_[i]; }
    int total_dim() const;

    Matrix dense() const;

private:
    std::vector<int> dims_;
    std::vector<Matrix> blocks_;
};

// relative tolerance for Hermitian-PSD validation
inline constexpr double kPsdTolerance = 1e-10;

// ---- products ------------------------------------------------------------

// (A □ B)_ij = A_ij · B_ij; requires identical grids and uniform square blocks
BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b);

// (A ⊠ B)_ij = A_ij ⊗ B_ij; requires identical grids only
BlockMatrix schur_tensor_product(const BlockMatrix& a, const BlockMatrix& b);

// (S · B)_ij = s_ij B_ij for a scalar multiplier S matching B's grid
BlockMatrix scalar_schur_action(const ScalarMatrix& s, const BlockMatrix& b);

// square multiplier with entries lambda_i - lambda_j
ScalarMatrix build_commutator_multiplier(const std::vector<double>& lambdas);

// ---- norms and grams -----------------------------------------------------

// sup_i || sum_j A_ij A_ij* ||^1/2
double row_norm(const BlockMatrix& a);
// sup_j || sum_i B_ij* B_ij ||^1/2
double col_norm(const BlockMatrix& b);
// scalar specializations: largest row / column Euclidean length
double row_norm(const ScalarMatrix& a);
double col_norm(const ScalarMatrix& b);

BlockDiagonal diag_row_gram(const BlockMatrix& a);
BlockDiagonal diag_col_gram(const BlockMatrix& b);

// ---- dense plumbing ------------------------------------------------------

Matrix flatten(const BlockMatrix& a);
// inverse of flatten for the given dimension signatures
BlockMatrix split(const Matrix& dense, std::vector<int> row_dims,
                  std::vector<int> col_dims);

// largest singular value
double operator_norm(const Matrix& m);

Matrix kronecker(const Matrix& a, const Matrix& b);

// linear-combination helpers (the products are bilinear)
BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix operator*(Complex c, const BlockMatrix& a);

} // namespace schurkit
