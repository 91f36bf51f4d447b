#pragma once
//
// Row-wise and column-wise polar decompositions and the two factorizations
// built on them: A □ B and A ⊠ B both factor as
//     (left diagonal) · (contraction middle) · (right diagonal)
// with the middle built constructively as V □ W resp. V ⊠ W from the polar
// isometry parts.
//

#include <utility>

#include "schurkit/blockmat.hpp"
#include "schurkit/check.hpp"

namespace schurkit {

// Result of a one-sided polar decomposition of a single dense row or column.
struct PolarPair {
    Matrix gram_sqrt;      // square Hermitian PSD factor
    Matrix isometry_part;  // partial isometry: V V* V = V
    double rank_tolerance_used = 0.0;
};

// unique PSD square root; eigenvalues negative within tolerance are clamped,
// beyond tolerance rejected
Matrix psd_sqrt(const Matrix& m);

// row = gram_sqrt · isometry_part with gram_sqrt = (row row*)^1/2
PolarPair right_polar(const Matrix& row);
// col = isometry_part · gram_sqrt with gram_sqrt = (col* col)^1/2
PolarPair left_polar(const Matrix& col);

// A = D · V with D_i = (sum_j A_ij A_ij*)^1/2 and every row of V a partial
// isometry
std::pair<BlockDiagonal, BlockMatrix> row_polar_factor(const BlockMatrix& a);
// B = W · D with D_j = (sum_i B_ij* B_ij)^1/2 and every column of W a
// partial isometry
std::pair<BlockMatrix, BlockDiagonal> col_polar_factor(const BlockMatrix& b);

enum class ProductKind { schur, schur_tensor };

struct SchurDecomposition {
    BlockDiagonal left;
    BlockMatrix middle;
    BlockDiagonal right;
    double middle_norm = 0.0;
    double reconstruction_error = 0.0;      // absolute Frobenius
    double reconstruction_error_rel = 0.0;  // relative to 1 + ||A op B||_F
};

// A □ B = left · (V □ W) · right
SchurDecomposition decompose_schur(const BlockMatrix& a, const BlockMatrix& b);
// A ⊠ B = (diag(AA*)^1/2 ⊠ I) · (V ⊠ W) · (I ⊠ diag(B*B)^1/2)
SchurDecomposition decompose_schur_tensor(const BlockMatrix& a, const BlockMatrix& b);

struct DecompositionReport {
    double middle_norm = 0.0;
    double reconstruction_error_abs = 0.0;
    double reconstruction_error_rel = 0.0;
    double max_partial_isometry_residual = 0.0;
    std::vector<CheckResult> checks;
    bool all_pass() const { return schurkit::all_pass(checks); }
};

// Recompute every invariant of a decomposition against its inputs.
DecompositionReport verify_decomposition(const SchurDecomposition& dec,
                                         const BlockMatrix& a, const BlockMatrix& b,
                                         ProductKind kind);

} // namespace schurkit
