#include "schurkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "schurkit/blockmat.hpp"
#include "schurkit/errors.hpp"
#include "schurkit/polar.hpp"
#include "schurkit/random.hpp"
#include "schurkit/thinset.hpp"

namespace schurkit {

namespace {

using Vector = Eigen::VectorXcd;

// worst measured value across all drawn instances
struct Gauge {
    double worst = -std::numeric_limits<double>::infinity();
    void feed(double measured) { worst = std::max(worst, measured); }
};

Vector random_unit(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = Complex(re, im);
    }
    const double norm = v.norm();
    if (norm == 0.0) {
        v.setZero();
        v(0) = 1.0;
        return v;
    }
    return v / norm;
}

RealMatrix random_symmetric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = gauss(rng);
    return 0.5 * (m + m.transpose());
}

// strictly feasible allocation, bounded away from both constraints
RealMatrix random_interior_allocation(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    RealMatrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b(i, j) = (0.1 + 0.8 * uni(rng)) / n;
    return b;
}

double max_gram_block_norm(const BlockDiagonal& d) {
    double best = 0.0;
    for (int i = 0; i < d.size(); ++i)
        best = std::max(best, operator_norm(d.block(i)));
    return best;
}

double frobenius_rel(const Matrix& got, const Matrix& want) {
    return (got - want).norm() / (1.0 + want.norm());
}

// zero out grid row 0 of a and grid column 0 of b, exercising the
// degenerate polar convention end to end
std::pair<BlockMatrix, BlockMatrix> degenerate_pair(const BlockMatrix& a, const BlockMatrix& b) {
    std::vector<Matrix> ab, bb;
    for (int i = 0; i < a.grid_rows(); ++i)
        for (int j = 0; j < a.grid_cols(); ++j)
            ab.push_back(i == 0 ? Matrix(Matrix::Zero(a.row_dim(i), a.col_dim(j)))
                                : a.block(i, j));
    for (int i = 0; i < b.grid_rows(); ++i)
        for (int j = 0; j < b.grid_cols(); ++j)
            bb.push_back(j == 0 ? Matrix(Matrix::Zero(b.row_dim(i), b.col_dim(j)))
                                : b.block(i, j));
    return {BlockMatrix(a.row_dims(), a.col_dims(), std::move(ab)),
            BlockMatrix(b.row_dims(), b.col_dims(), std::move(bb))};
}

} // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& opts) {
    if (opts.sizes.empty())
        throw parse_error("verify: no sizes given");
    for (int s : opts.sizes)
        if (s < 1)
            throw parse_error("verify: sizes must be positive");
    if (opts.repetitions < 1)
        throw parse_error("verify: repetitions must be at least 1");

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    Gauge livshits, horn_mathias, schur_vec, tensor_vec, gram_cons, scalar_embed, bilinearity;
    Gauge reconstruction, contraction, isometries, factor_norms, scale_cov;
    Gauge trace_match, upper_gap, rc_norms, concavity, monotone, grad_fd, stationary, sign_dual,
        scaling;

    auto feed_decomposition = [&](const BlockMatrix& a, const BlockMatrix& b, ProductKind kind) {
        SchurDecomposition dec = kind == ProductKind::schur ? decompose_schur(a, b)
                                                           : decompose_schur_tensor(a, b);
        // bilinear vector bound, measured against the true factors
        const Matrix product = flatten(kind == ProductKind::schur ? schur_product(a, b)
                                                                  : schur_tensor_product(a, b));
        const Matrix left = dec.left.dense();
        const Matrix right = dec.right.dense();
        Gauge& vec_gauge = kind == ProductKind::schur ? schur_vec : tensor_vec;
        for (int k = 0; k < 3; ++k) {
            const Vector xi = random_unit(static_cast<int>(product.cols()), rng);
            const Vector gamma = random_unit(static_cast<int>(product.rows()), rng);
            const double pairing = std::abs((gamma.adjoint() * product * xi)(0, 0));
            vec_gauge.feed(pairing - (left * gamma).norm() * (right * xi).norm());
        }

        SchurDecomposition checked = dec;
        if (opts.perturb != 0.0)
            checked.middle = Complex(1.0 + opts.perturb, 0.0) * dec.middle;
        const DecompositionReport report = verify_decomposition(checked, a, b, kind);
        reconstruction.feed(report.reconstruction_error_rel);
        contraction.feed(report.middle_norm);
        isometries.feed(report.max_partial_isometry_residual);
        for (const auto& c : report.checks)
            if (c.name == "row_factor_norm" || c.name == "col_factor_norm")
                factor_norms.feed(c.measured);
    };

    for (int size : opts.sizes) {
        for (int rep = 0; rep < opts.repetitions; ++rep) {
            const int h = 1 + rep % 3;
            const BlockMatrix a = random_uniform_block_matrix(size, h, rng);
            const BlockMatrix b = random_uniform_block_matrix(size, h, rng);
            livshits.feed(operator_norm(flatten(schur_product(a, b))) -
                          row_norm(a) * col_norm(b));

            const BlockMatrix ta = random_block_matrix(random_dims(size, 1, 3, rng),
                                                       random_dims(size, 1, 3, rng), rng);
            const BlockMatrix tb = random_block_matrix(random_dims(size, 1, 3, rng),
                                                       random_dims(size, 1, 3, rng), rng);
            horn_mathias.feed(operator_norm(flatten(schur_tensor_product(ta, tb))) -
                              row_norm(ta) * col_norm(tb));

            const double rn = row_norm(a);
            const double cn = col_norm(b);
            gram_cons.feed(std::abs(rn * rn - max_gram_block_norm(diag_row_gram(a))) /
                           std::max(1.0, rn * rn));
            gram_cons.feed(std::abs(cn * cn - max_gram_block_norm(diag_col_gram(b))) /
                           std::max(1.0, cn * cn));

            const ScalarMatrix s{random_matrix(size, size, rng)};
            scalar_embed.feed(std::abs(
                operator_norm(flatten(scalar_schur_action(s, b))) -
                operator_norm(flatten(schur_tensor_product(BlockMatrix::from_scalar(s), b)))));

            const Complex alpha(uni(rng) * 2.0 - 1.0, uni(rng) * 2.0 - 1.0);
            const BlockMatrix a2 = random_uniform_block_matrix(size, h, rng);
            bilinearity.feed(frobenius_rel(
                flatten(schur_product(alpha * a + a2, b)),
                flatten(alpha * schur_product(a, b) + schur_product(a2, b))));
            const BlockMatrix ta2 = random_block_matrix(ta.row_dims(), ta.col_dims(), rng);
            bilinearity.feed(frobenius_rel(
                flatten(schur_tensor_product(alpha * ta + ta2, tb)),
                flatten(alpha * schur_tensor_product(ta, tb) + schur_tensor_product(ta2, tb))));

            feed_decomposition(a, b, ProductKind::schur);
            feed_decomposition(ta, tb, ProductKind::schur_tensor);

            // positive rescaling keeps the isometry parts, scales the left factor
            const double c = 0.5 + 2.5 * uni(rng);
            const SchurDecomposition base = decompose_schur(a, b);
            const SchurDecomposition scaled = decompose_schur(Complex(c, 0.0) * a, b);
            scale_cov.feed(frobenius_rel(scaled.left.dense(), c * base.left.dense()));
            scale_cov.feed(frobenius_rel(flatten(scaled.middle), flatten(base.middle)));
        }

        {
            const int h = size > 1 ? 2 : 1;
            auto [a0, b0] = degenerate_pair(random_uniform_block_matrix(size, h, rng),
                                            random_uniform_block_matrix(size, h, rng));
            feed_decomposition(a0, b0, ProductKind::schur);
            auto [t0, u0] = degenerate_pair(
                random_block_matrix(random_dims(size, 1, 3, rng), random_dims(size, 1, 3, rng), rng),
                random_block_matrix(random_dims(size, 1, 3, rng), random_dims(size, 1, 3, rng), rng));
            feed_decomposition(t0, u0, ProductKind::schur_tensor);
        }
    }

    for (int size : opts.sizes) {
        for (int rep = 0; rep < opts.repetitions; ++rep) {
            const WitnessMatrix t = WitnessMatrix::normalized(random_symmetric(size, rng));
            const SolverResult sol = maximize_objective(t);
            const double value = objective(t, sol.maximizer);
            const auto [r, c] = realize_optimizers(t, sol.maximizer);
            trace_match.feed(std::abs(schur_trace(r, c, t) - Complex(value, 0.0)));
            upper_gap.feed(value - upper_bound(t));
            rc_norms.feed(std::max(row_norm(r), col_norm(c)));
            monotone.feed(-sol.min_accepted_improvement);

            const AllocationMatrix b1{random_interior_allocation(size, rng)};
            const AllocationMatrix b2{random_interior_allocation(size, rng)};
            const double theta = 0.1 + 0.8 * uni(rng);
            const AllocationMatrix mix{
                RealMatrix(theta * b1.entries() + (1.0 - theta) * b2.entries())};
            concavity.feed(theta * objective(t, b1) + (1.0 - theta) * objective(t, b2) -
                           objective(t, mix));

            const AllocationMatrix bi{random_interior_allocation(size, rng)};
            const RealMatrix analytic = objective_gradient(t, bi, 1e-18);
            RealMatrix fd(size, size);
            const double step = 1e-6;
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) {
                    RealMatrix up = bi.entries();
                    RealMatrix down = bi.entries();
                    up(i, j) += step;
                    down(i, j) -= step;
                    fd(i, j) = (objective(t, AllocationMatrix(std::move(up))) -
                                objective(t, AllocationMatrix(std::move(down)))) /
                               (2.0 * step);
                }
            grad_fd.feed((analytic - fd).norm() / fd.norm());

            const double factor = 0.5 + 2.0 * uni(rng);
            const WitnessMatrix scaled_t{RealMatrix(factor * t.entries())};
            scaling.feed(std::abs(objective(scaled_t, bi) - factor * objective(t, bi)) /
                         std::max(1.0, factor * objective(t, bi)));

            const RealMatrix raw = random_symmetric(size, rng);
            sign_dual.feed(
                std::abs((sign_witness(raw) * raw).trace() / schatten1(raw) - 1.0));
        }

        // constant witness: the midpoint is a stationary point of the
        // projected ascent
        const WitnessMatrix constant{RealMatrix(RealMatrix::Ones(size, size) / size)};
        const AllocationMatrix mid = AllocationMatrix::midpoint(size);
        const RealMatrix g = objective_gradient(constant, mid, 1e-18);
        RealMatrix moved = mid.entries() + g;
        for (int j = 0; j < size; ++j)
            moved.col(j) = project_to_simplex(moved.col(j));
        stationary.feed((moved - mid.entries()).norm());
    }

    return {
        {"livshits_schur_bound", livshits.worst, 1e-10, livshits.worst <= 1e-10},
        {"horn_mathias_tensor_bound", horn_mathias.worst, 1e-10, horn_mathias.worst <= 1e-10},
        {"schur_vector_bound", schur_vec.worst, 1e-10, schur_vec.worst <= 1e-10},
        {"tensor_vector_bound", tensor_vec.worst, 1e-10, tensor_vec.worst <= 1e-10},
        {"gram_norm_consistency", gram_cons.worst, 1e-12, gram_cons.worst <= 1e-12},
        {"scalar_embedding_isometry", scalar_embed.worst, 1e-10, scalar_embed.worst <= 1e-10},
        {"product_bilinearity", bilinearity.worst, 1e-12, bilinearity.worst <= 1e-12},
        {"reconstruction_rel", reconstruction.worst, 1e-9, reconstruction.worst <= 1e-9},
        {"middle_contraction", contraction.worst, 1.0 + 1e-9, contraction.worst <= 1.0 + 1e-9},
        {"partial_isometries", isometries.worst, 1e-9, isometries.worst <= 1e-9},
        {"polar_factor_norms", factor_norms.worst, 1.0 + 1e-10,
         factor_norms.worst <= 1.0 + 1e-10},
        {"scale_covariance", scale_cov.worst, 1e-9, scale_cov.worst <= 1e-9},
        {"duality_trace_match", trace_match.worst, 1e-12, trace_match.worst <= 1e-12},
        {"duality_upper_bound", upper_gap.worst, 1e-9, upper_gap.worst <= 1e-9},
        {"realized_factor_norms", rc_norms.worst, 1.0 + 1e-12, rc_norms.worst <= 1.0 + 1e-12},
        {"objective_concavity", concavity.worst, 1e-12, concavity.worst <= 1e-12},
        {"solver_monotone", monotone.worst, 0.0, monotone.worst <= 0.0},
        {"gradient_finite_difference", grad_fd.worst, 1e-5, grad_fd.worst <= 1e-5},
        {"stationary_midpoint", stationary.worst, 1e-10, stationary.worst <= 1e-10},
        {"sign_witness_duality", sign_dual.worst, 1e-10, sign_dual.worst <= 1e-10},
        {"objective_scaling", scaling.worst, 1e-12, scaling.worst <= 1e-12},
    };
}

} // namespace schurkit
