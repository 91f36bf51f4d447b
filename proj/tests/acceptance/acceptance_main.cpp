// Acceptance gate: ten end-to-end criteria, one line each, nonzero exit if
// any fails. Tolerances and instance counts are fixed; runtimes are checked
// against the stated budgets.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schurkit/blockmat.hpp"
#include "schurkit/harness.hpp"
#include "schurkit/polar.hpp"
#include "schurkit/random.hpp"
#include "schurkit/thinset.hpp"

#include "support/oracles.hpp"

using namespace schurkit;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool pass, double elapsed, double limit, const char* fmt, ...) {
    char detail[384];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(detail, sizeof(detail), fmt, ap);
    va_end(ap);
    const bool ok = pass && elapsed < limit;
    if (!ok) ++failures;
    std::printf("C%-2d %s  %s  [%.2fs, limit %.0fs]\n", id, ok ? "PASS" : "FAIL", detail,
                elapsed, limit);
    std::fflush(stdout);
}

// max over row slabs of V and column slabs of W of ||P P* P - P||_F
double isometry_residuals(const BlockMatrix& a, const BlockMatrix& b) {
    double worst = 0.0;
    const auto [da, v] = row_polar_factor(a);
    const Matrix vd = flatten(v);
    int r0 = 0;
    for (int i = 0; i < v.grid_rows(); ++i) {
        const Matrix p = vd.middleRows(r0, v.row_dim(i));
        worst = std::max(worst, (p * p.adjoint() * p - p).norm());
        r0 += v.row_dim(i);
    }
    const auto [w, db] = col_polar_factor(b);
    const Matrix wd = flatten(w);
    int c0 = 0;
    for (int j = 0; j < w.grid_cols(); ++j) {
        const Matrix p = wd.middleCols(c0, w.col_dim(j));
        worst = std::max(worst, (p * p.adjoint() * p - p).norm());
        c0 += w.col_dim(j);
    }
    return worst;
}

double relative_residual(const Matrix& target, const SchurDecomposition& dec) {
    const Matrix rebuilt = dec.left.dense() * flatten(dec.middle) * dec.right.dense();
    return (target - rebuilt).norm() / (1.0 + target.norm());
}

RealMatrix random_symmetric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = normal(rng);
    return 0.5 * (m + m.transpose().eval());
}

double worst_isometry = 0.0;  // accumulated across criteria 1 and 2

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    double worst_rel = 0.0, worst_middle = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + k % 6;
        const int h = 1 + (k / 6) % 3;
        const auto a = random_uniform_block_matrix(n, h, rng);
        const auto b = random_uniform_block_matrix(n, h, rng);
        const auto dec = decompose_schur(a, b);
        worst_rel = std::max(worst_rel, relative_residual(flatten(schur_product(a, b)), dec));
        worst_middle = std::max(worst_middle, operator_norm(flatten(dec.middle)));
        worst_isometry = std::max(worst_isometry, isometry_residuals(a, b));
    }
    const double elapsed = seconds_since(t0);
    report(1, worst_rel < 1e-9 && worst_middle <= 1.0 + 1e-9, elapsed, 10.0,
           "schur decomposition: worst rel residual %.3g, worst middle norm %.12f (200 instances)",
           worst_rel, worst_middle);
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1002);
    double worst_rel = 0.0, worst_middle = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + k % 6;
        const auto a =
            random_block_matrix(random_dims(n, 1, 3, rng), random_dims(n, 1, 3, rng), rng);
        const auto b =
            random_block_matrix(random_dims(n, 1, 3, rng), random_dims(n, 1, 3, rng), rng);
        const auto dec = decompose_schur_tensor(a, b);
        worst_rel =
            std::max(worst_rel, relative_residual(flatten(schur_tensor_product(a, b)), dec));
        worst_middle = std::max(worst_middle, operator_norm(flatten(dec.middle)));
        worst_isometry = std::max(worst_isometry, isometry_residuals(a, b));
    }
    const double elapsed = seconds_since(t0);
    report(2, worst_rel < 1e-9 && worst_middle <= 1.0 + 1e-9, elapsed, 30.0,
           "tensor decomposition: worst rel residual %.3g, worst middle norm %.12f (200 instances)",
           worst_rel, worst_middle);
}

void criterion_3() {
    // residuals were accumulated while criteria 1 and 2 ran their suites
    report(3, worst_isometry < 1e-9, 0.0, 60.0,
           "partial isometries: worst ||PP*P - P||_F = %.3g over both suites", worst_isometry);
}

void criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1004);
    double worst_schur = -1e9, worst_tensor = -1e9, worst_vector = -1e9;
    for (int k = 0; k < 500; ++k) {
        const int n = 2 + k % 3;
        const int h = 1 + (k / 3) % 3;
        const auto a = random_uniform_block_matrix(n, h, rng);
        const auto b = random_uniform_block_matrix(n, h, rng);
        const double bound = row_norm(a) * col_norm(b);
        worst_schur = std::max(worst_schur, operator_norm(flatten(schur_product(a, b))) - bound);
        const auto tensor = schur_tensor_product(a, b);
        worst_tensor = std::max(worst_tensor, operator_norm(flatten(tensor)) - bound);

        const auto dec = decompose_schur_tensor(a, b);
        const Matrix m = flatten(tensor);
        const Matrix left = dec.left.dense();
        const Matrix right = dec.right.dense();
        for (int rep = 0; rep < 10; ++rep) {
            const Matrix xi = random_matrix(static_cast<int>(m.cols()), 1, rng);
            const Matrix gamma = random_matrix(static_cast<int>(m.rows()), 1, rng);
            const double pairing = std::abs((gamma.adjoint() * m * xi)(0, 0));
            const double cap = (left * gamma).norm() * (right * xi).norm();
            worst_vector = std::max(worst_vector, pairing - cap - 1e-10 * cap);
        }
    }
    const double elapsed = seconds_since(t0);
    report(4, worst_schur <= 1e-10 && worst_tensor <= 1e-10 && worst_vector <= 1e-10, elapsed,
           120.0,
           "norm inequalities: worst slack schur %.3g, tensor %.3g, vector bound %.3g "
           "(500 pairs, 10 vectors each)",
           worst_schur, worst_tensor, worst_vector);
}

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1005);
    bool pass = true;
    double worst_gap = 0.0, worst_trace = 0.0, worst_norm = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 3;
        const WitnessMatrix t(random_symmetric(n, rng));
        const auto sol = maximize_objective(t);
        RealMatrix entries = t.entries();
        const double oracle = oracles::grid_oracle(entries, oracles::grid_steps_for(n));
        const double cap = upper_bound(t);
        if (sol.value < oracle - 1e-4 || sol.value > cap + 1e-9) pass = false;
        worst_gap = std::max(worst_gap, oracle - sol.value);

        const auto [r, c] = realize_optimizers(t, sol.maximizer);
        const Complex trace = schur_trace(r, c, t);
        worst_trace = std::max(worst_trace, std::abs(trace.real() - sol.value));
        worst_trace = std::max(worst_trace, std::abs(trace.imag()));
        worst_norm = std::max(worst_norm, std::max(row_norm(r), col_norm(c)));
    }
    if (worst_trace > 1e-10 || worst_norm > 1.0 + 1e-12) pass = false;

    double worst_const = 0.0;
    for (int n = 2; n <= 4; ++n) {
        const WitnessMatrix ones(RealMatrix::Ones(n, n));
        worst_const = std::max(worst_const,
                               std::abs(maximize_objective(ones).value - static_cast<double>(n)));
    }
    if (worst_const > 1e-8) pass = false;

    const double elapsed = seconds_since(t0);
    report(5, pass, elapsed, 60.0,
           "solver certification: worst oracle gap %.3g, trace mismatch %.3g, factor norm %.12f, "
           "constant-witness error %.3g (100 + 3 instances)",
           worst_gap, worst_trace, worst_norm, worst_const);
}

void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
    const auto reports = run_trials({50}, seeds, SolverOptions{});
    int below_3 = 0, below_2_5 = 0;
    for (const auto& r : reports) {
        if (r.max_times_sqrt_n < 3.0) ++below_3;
        if (r.max_times_sqrt_n < 2.5) ++below_2_5;
    }
    const double median = summarize_trials(reports).at(0).median_max_times_sqrt_n;
    const double elapsed = seconds_since(t0);
    report(6, below_3 == 20 && below_2_5 >= 16, elapsed, 600.0,
           "thin-set experiment n=50: %d/20 below 3, %d/20 below 2.5, median value*sqrt(n) %.6f",
           below_3, below_2_5, median);
}

void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (const int n : {64, 128}) {
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            std::mt19937_64 rng(seed);
            const double s1 = schatten1(sample_integer_symmetric(n, rng));
            if (s1 > 33.3 * std::pow(static_cast<double>(n), 1.5)) ++hits;
        }
        if (hits < 9) pass = false;
        detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " +
                  std::to_string(hits) + "/10";
    }
    const double elapsed = seconds_since(t0);
    report(7, pass, elapsed, 120.0, "schatten-1 growth above 33.3*n^1.5: %s", detail.c_str());
}

void criterion_8() {
    const auto t0 = std::chrono::steady_clock::now();
    const double reference = semicircle_f_reference();
    int hits = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double diff = std::abs(semicircle_trial(200, seed).f_mean - reference);
        worst = std::max(worst, diff);
        if (diff < 0.05) ++hits;
    }
    const double elapsed = seconds_since(t0);
    report(8, hits >= 18, elapsed, 60.0,
           "semicircle statistic n=200: %d/20 within 0.05 of 8/(3pi), worst |diff| %.4f", hits,
           worst);
}

void criterion_9() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1009);
    double worst = 0.0, worst_pairing = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 9;
        const auto t = WitnessMatrix::normalized(random_symmetric(n, rng));
        const RealMatrix w = sign_witness(t.entries());
        const double trace = (w * t.entries()).trace();
        worst = std::max(worst, std::abs(trace - 1.0));
        const double scale = 3.0 / std::sqrt(static_cast<double>(n));
        worst_pairing = std::max(worst_pairing, std::abs(scale * trace - scale));
    }
    const double elapsed = seconds_since(t0);
    report(9, worst < 1e-10 && worst_pairing < 1e-9, elapsed, 60.0,
           "sign witness: worst |tr(W T) - 1| = %.3g, worst pairing deviation %.3g "
           "(100 witnesses)",
           worst, worst_pairing);
}

void criterion_10() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 3;
        const WitnessMatrix t(random_symmetric(n, rng));
        RealMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                b(i, j) = (0.1 + 0.8 * unit(rng)) / n;
        const AllocationMatrix alloc(b);
        const RealMatrix g = objective_gradient(t, alloc, SolverOptions{}.gradient_floor);
        const double step = 1e-6;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RealMatrix up = b, down = b;
                up(i, j) += step;
                down(i, j) -= step;
                const double fd = (objective(t, AllocationMatrix(up)) -
                                   objective(t, AllocationMatrix(down))) /
                                  (2.0 * step);
                worst = std::max(worst,
                                 std::abs(g(i, j) - fd) / std::max(1.0, std::abs(fd)));
            }
    }
    const double elapsed = seconds_since(t0);
    report(10, worst < 1e-5, elapsed, 60.0,
           "gradient vs central differences: worst relative deviation %.3g (100 interior points)",
           worst);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::printf("all 10 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
