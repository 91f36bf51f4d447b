#pragma once
//
// Serial reference implementations of the parallel kernels. Same
// per-element arithmetic, plain loops, no worker pool; kept for parity
// testing and as the baseline in the benchmark target.
//

#include <cstdint>
#include <vector>

#include "schurkit/blockmat.hpp"
#include "schurkit/polar.hpp"
#include "schurkit/thinset.hpp"

namespace schurkit::ref {

BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix schur_tensor_product(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix scalar_schur_action(const ScalarMatrix& s, const BlockMatrix& b);
BlockDiagonal diag_row_gram(const BlockMatrix& a);
BlockDiagonal diag_col_gram(const BlockMatrix& b);
double row_norm(const BlockMatrix& a);
double col_norm(const BlockMatrix& b);

std::pair<BlockDiagonal, BlockMatrix> row_polar_factor(const BlockMatrix& a);
std::pair<BlockMatrix, BlockDiagonal> col_polar_factor(const BlockMatrix& b);
SchurDecomposition decompose_schur(const BlockMatrix& a, const BlockMatrix& b);
SchurDecomposition decompose_schur_tensor(const BlockMatrix& a, const BlockMatrix& b);

std::vector<ExperimentReport> run_trials(const std::vector<int>& dims,
                                         const std::vector<std::uint64_t>& seeds,
                                         const SolverOptions& opts);

} // namespace schurkit::ref
