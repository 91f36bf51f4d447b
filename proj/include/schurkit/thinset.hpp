#pragma once
//
// The thin-set machinery: the concave objective
//     sum_i sqrt( sum_j b_ij t_ji^2 )
// over allocation matrices b >= 0 with column sums at most 1, its projected
// gradient solver, realization of the optimizers as a factor pair (R, C),
// random symmetric witnesses sampled on the integers -99..99, Schatten-1
// normalization, semicircle statistics and the sign witness 2E - I.
//

#include <cstdint>
#include <random>
#include <utility>

#include "schurkit/blockmat.hpp"

namespace schurkit {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct SolverOptions {
    int max_iterations = 10000;
    double relative_improvement_tolerance = 1e-12;
    // subgradient floor inside the square root, gradient evaluation only
    double gradient_floor = 1e-18;
    // backtracking line search
    double initial_step = 1.0;
    double step_shrink = 0.5;
    double sufficient_increase = 1e-4;
};

// Nonnegative n x n matrix with column sums at most 1 (the variable b of the
// maximization; b_ij stands for |c_ij|^2).
class AllocationMatrix {
public:
    explicit AllocationMatrix(RealMatrix entries);

    static AllocationMatrix midpoint(int n);  // all entries 1/n

    int n() const { return static_cast<int>(entries_.rows()); }
    const RealMatrix& entries() const { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }

private:
    RealMatrix entries_;
};

// Exactly symmetric real matrix with its Schatten-1 norm attached.
class WitnessMatrix {
public:
    explicit WitnessMatrix(RealMatrix entries);

    // scale to unit Schatten-1 norm
    static WitnessMatrix normalized(const RealMatrix& entries);

    int n() const { return static_cast<int>(entries_.rows()); }
    const RealMatrix& entries() const { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }
    double schatten1() const { return schatten1_; }

private:
    RealMatrix entries_;
    double schatten1_;
};

// ---- objective and solver ------------------------------------------------

double objective(const WitnessMatrix& t, const AllocationMatrix& b);

// d/db_ij = t_ji^2 / (2 sqrt(sum_k b_ik t_ki^2 + floor))
RealMatrix objective_gradient(const WitnessMatrix& t, const AllocationMatrix& b,
                              double gradient_floor);

// Euclidean projection onto { x >= 0, sum x = 1 }, sort-based
RealVector project_to_simplex(const RealVector& v);

struct SolverResult {
    AllocationMatrix maximizer;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    // smallest accepted objective gain; nonnegative iff the ascent was monotone
    double min_accepted_improvement = 0.0;
};

// Projected gradient ascent from the midpoint, columnwise simplex
// projection, backtracking line search. The value returned is a certified
// lower bound on the supremum; pair with upper_bound for the sandwich.
SolverResult maximize_objective(const WitnessMatrix& t, const SolverOptions& opts = {});

// (R, C) with row_norm(R) <= 1, col_norm(C) <= 1 and
// tr((R ∘ C) T) = objective(T, b): c_ij = sqrt(b_ij), row i of R the unit
// vector along (c_ij t_ji)_j
std::pair<ScalarMatrix, ScalarMatrix> realize_optimizers(const WitnessMatrix& t,
                                                         const AllocationMatrix& b);

// tr((R ∘ C) T)
Complex schur_trace(const ScalarMatrix& r, const ScalarMatrix& c,
                    const WitnessMatrix& t);

// n · max_ij |t_ij|
double upper_bound(const WitnessMatrix& t);

// ---- random witnesses and spectral statistics ----------------------------

// (N + N^T)/2 for N with independent entries uniform on the integers
// -99..99; deterministic per (n, rng state)
RealMatrix sample_integer_symmetric(int n, std::mt19937_64& rng);

// X = SN / (s sqrt(n)) with s = sqrt(1650)
RealMatrix wigner_normalize(const RealMatrix& sn, int n);

// sum of absolute eigenvalues (symmetric input; lower triangle is used)
double schatten1(const RealMatrix& sym);

// (1/n) sum_i min(|lambda_i|, 2) over the eigenvalues
double empirical_f_mean(const RealMatrix& x);

// 2E - I for E the range projection of the positive part; pairs with T to
// give the full Schatten-1 norm under the trace
RealMatrix sign_witness(const RealMatrix& t);

// integral of min(|t|, 2) against the semicircle density: 8 / (3 pi)
double semicircle_f_reference();

// ---- the experiment ------------------------------------------------------

struct ExperimentReport {
    int n = 0;
    std::uint64_t seed = 0;
    double schatten1_raw = 0.0;      // ||SN||_1 before normalization
    double max_value = 0.0;
    double max_times_sqrt_n = 0.0;
    double upper_bound_check = 0.0;  // 99 n / ||SN||_1
    double semicircle_f_mean = 0.0;
    int support_count = 0;           // entries of b* above 1e-8
    int iterations = 0;
    bool converged = false;
};

// One trial: sample SN, normalize to T, maximize, attach the analytic bound
// and spectral statistics.
ExperimentReport run_witness_experiment(int n, std::uint64_t seed,
                                        const SolverOptions& opts = {});

} // namespace schurkit
