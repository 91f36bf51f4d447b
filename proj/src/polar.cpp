#include "schurkit/polar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "schurkit/threading.hpp"

namespace schurkit {

namespace {

// tolerances of the factorization contract
constexpr double kReconstructionTol = 1e-9;
constexpr double kContractionTol = 1e-9;
constexpr double kIsometryTol = 1e-9;
constexpr double kFactorNormTol = 1e-10;

Matrix hermitian_part(const Matrix& m) {
    return 0.5 * (m + m.adjoint().eval());
}

// dense concatenation of grid row i resp. grid column j
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

double isometry_residual(const Matrix& p) {
    return (p * p.adjoint() * p - p).norm();
}

} // namespace

Matrix psd_sqrt(const Matrix& m) {
    if (m.rows() != m.cols())
        throw shape_error("psd_sqrt: matrix is not square");
    const double scale = std::max(m.norm(), 1.0);
    if ((m - m.adjoint()).norm() > kPsdTolerance * scale)
        throw numeric_error("psd_sqrt: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd lambda = es.eigenvalues();
    const double hi = std::max(lambda.cwiseAbs().maxCoeff(), 1.0);
    for (int k = 0; k < lambda.size(); ++k) {
        if (lambda(k) < -kPsdTolerance * hi)
            throw numeric_error("psd_sqrt: eigenvalue " + std::to_string(lambda(k)) +
                                " is negative beyond tolerance");
        lambda(k) = std::sqrt(std::max(lambda(k), 0.0));
    }
    const Matrix& u = es.eigenvectors();
    return hermitian_part(u * lambda.cast<Complex>().asDiagonal() * u.adjoint());
}

PolarPair right_polar(const Matrix& row) {
    Eigen::JacobiSVD<Matrix> svd(row, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double tol = static_cast<double>(std::max(row.rows(), row.cols())) *
                       std::numeric_limits<double>::epsilon() * sigma_max;
    Eigen::VectorXd kept(sigma.size());
    for (int k = 0; k < sigma.size(); ++k)
        kept(k) = sigma(k) > tol ? 1.0 : 0.0;
    PolarPair out;
    out.gram_sqrt = hermitian_part(svd.matrixU() * sigma.cast<Complex>().asDiagonal() *
                                   svd.matrixU().adjoint());
    out.isometry_part =
        svd.matrixU() * kept.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
    out.rank_tolerance_used = tol;
    return out;
}

PolarPair left_polar(const Matrix& col) {
    Eigen::JacobiSVD<Matrix> svd(col, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double tol = static_cast<double>(std::max(col.rows(), col.cols())) *
                       std::numeric_limits<double>::epsilon() * sigma_max;
    Eigen::VectorXd kept(sigma.size());
    for (int k = 0; k < sigma.size(); ++k)
        kept(k) = sigma(k) > tol ? 1.0 : 0.0;
    PolarPair out;
    out.gram_sqrt = hermitian_part(svd.matrixV() * sigma.cast<Complex>().asDiagonal() *
                                   svd.matrixV().adjoint());
    out.isometry_part =
        svd.matrixU() * kept.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
    out.rank_tolerance_used = tol;
    return out;
}

std::pair<BlockDiagonal, BlockMatrix> row_polar_factor(const BlockMatrix& a) {
    const int rows = a.grid_rows();
    const int cols = a.grid_cols();
    std::vector<Matrix> gram(rows);
    std::vector<Matrix> parts(static_cast<std::size_t>(rows) * cols);
#pragma omp parallel for schedule(static) num_threads(threads::max_threads())
    for (int i = 0; i < rows; ++i) {
        PolarPair p = right_polar(dense_row(a, i));
        gram[i] = std::move(p.gram_sqrt);
        int at = 0;
        for (int j = 0; j < cols; ++j) {
            parts[i * cols + j] = p.isometry_part.middleCols(at, a.col_dim(j));
            at += a.col_dim(j);
        }
    }
    return {BlockDiagonal(std::move(gram)),
            BlockMatrix(a.row_dims(), a.col_dims(), std::move(parts))};
}

std::pair<BlockMatrix, BlockDiagonal> col_polar_factor(const BlockMatrix& b) {
    const int rows = b.grid_rows();
    const int cols = b.grid_cols();
    std::vector<Matrix> gram(cols);
    std::vector<Matrix> parts(static_cast<std::size_t>(rows) * cols);
#pragma omp parallel for schedule(static) num_threads(threads::max_threads())
    for (int j = 0; j < cols; ++j) {
        PolarPair p = left_polar(dense_col(b, j));
        gram[j] = std::move(p.gram_sqrt);
        int at = 0;
        for (int i = 0; i < rows; ++i) {
            parts[i * cols + j] = p.isometry_part.middleRows(at, b.row_dim(i));
            at += b.row_dim(i);
        }
    }
    return {BlockMatrix(b.row_dims(), b.col_dims(), std::move(parts)),
            BlockDiagonal(std::move(gram))};
}

namespace {

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

SchurDecomposition decompose_schur(const BlockMatrix& a, const BlockMatrix& b) {
    const Matrix product = flatten(schur_product(a, b));
    auto [left, v] = row_polar_factor(a);
    auto [w, right] = col_polar_factor(b);
    return assemble(std::move(left), schur_product(v, w), std::move(right), product);
}

SchurDecomposition decompose_schur_tensor(const BlockMatrix& a, const BlockMatrix& b) {
    const Matrix product = flatten(schur_tensor_product(a, b));
    auto [da, v] = row_polar_factor(a);
    auto [w, db] = col_polar_factor(b);

    // diag(AA*)^1/2 ⊠ I and I ⊠ diag(B*B)^1/2, blockwise
    std::vector<Matrix> left_blocks(da.size());
    for (int i = 0; i < da.size(); ++i)
        left_blocks[i] = kronecker(da.block(i), Matrix::Identity(b.row_dim(i), b.row_dim(i)));
    std::vector<Matrix> right_blocks(db.size());
    for (int j = 0; j < db.size(); ++j)
        right_blocks[j] = kronecker(Matrix::Identity(a.col_dim(j), a.col_dim(j)), db.block(j));

    return assemble(BlockDiagonal(std::move(left_blocks)), schur_tensor_product(v, w),
                    BlockDiagonal(std::move(right_blocks)), product);
}

DecompositionReport verify_decomposition(const SchurDecomposition& dec, const BlockMatrix& a,
                                         const BlockMatrix& b, ProductKind kind) {
    const Matrix product =
        flatten(kind == ProductKind::schur ? schur_product(a, b) : schur_tensor_product(a, b));
    const Matrix rebuilt = dec.left.dense() * flatten(dec.middle) * dec.right.dense();
    if (rebuilt.rows() != product.rows() || rebuilt.cols() != product.cols())
        throw shape_error("verify_decomposition: factors do not match the product shape");

    DecompositionReport report;
    report.reconstruction_error_abs = (product - rebuilt).norm();
    report.reconstruction_error_rel = report.reconstruction_error_abs / (1.0 + product.norm());
    report.middle_norm = operator_norm(flatten(dec.middle));

    auto [da, v] = row_polar_factor(a);
    auto [w, db] = col_polar_factor(b);
    double residual = 0.0;
    for (int i = 0; i < v.grid_rows(); ++i)
        residual = std::max(residual, isometry_residual(dense_row(v, i)));
    for (int j = 0; j < w.grid_cols(); ++j)
        residual = std::max(residual, isometry_residual(dense_col(w, j)));
    report.max_partial_isometry_residual = residual;

    const double v_norm = row_norm(v);
    const double w_norm = col_norm(w);
    report.checks = {
        {"reconstruction_rel", report.reconstruction_error_rel, kReconstructionTol,
         report.reconstruction_error_rel <= kReconstructionTol},
        {"middle_contraction", report.middle_norm, 1.0 + kContractionTol,
         report.middle_norm <= 1.0 + kContractionTol},
        {"partial_isometries", residual, kIsometryTol, residual <= kIsometryTol},
        {"row_factor_norm", v_norm, 1.0 + kFactorNormTol, v_norm <= 1.0 + kFactorNormTol},
        {"col_factor_norm", w_norm, 1.0 + kFactorNormTol, w_norm <= 1.0 + kFactorNormTol},
    };
    return report;
}

} // namespace schurkit
