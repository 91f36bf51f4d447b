#include "schurkit/thinset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "schurkit/random.hpp"

namespace schurkit {

namespace {

constexpr double kColumnSumSlack = 1e-12;
constexpr double kSupportThreshold = 1e-8;
constexpr double kSignZeroBand = 1e-12;

void require_matching(const WitnessMatrix& t, const AllocationMatrix& b) {
    if (t.n() != b.n())
        throw shape_error("thinset: witness is " + std::to_string(t.n()) + "x" +
                          std::to_string(t.n()) + ", allocation is " + std::to_string(b.n()) +
                          "x" + std::to_string(b.n()));
}

// objective and gradient on raw entries, shared by the validated wrappers
// and the solver loop
double objective_raw(const RealMatrix& t, const RealMatrix& b) {
    const int n = static_cast<int>(b.rows());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            const double tji = t(j, i);
            s += b(i, j) * tji * tji;
        }
        total += std::sqrt(s);
    }
    return total;
}

RealMatrix gradient_raw(const RealMatrix& t, const RealMatrix& b, double floor) {
    const int n = static_cast<int>(b.rows());
    RealMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double tki = t(k, i);
            s += b(i, k) * tki * tki;
        }
        const double denom = 2.0 * std::sqrt(s + floor);
        for (int j = 0; j < n; ++j) {
            const double tji = t(j, i);
            g(i, j) = tji * tji / denom;
        }
    }
    return g;
}

RealMatrix project_columns(RealMatrix b) {
    for (int j = 0; j < b.cols(); ++j)
        b.col(j) = project_to_simplex(b.col(j));
    return b;
}

} // namespace

// ---- AllocationMatrix / WitnessMatrix ------------------------------------

AllocationMatrix::AllocationMatrix(RealMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
        throw shape_error("AllocationMatrix: square matrix required");
    if (!entries_.allFinite())
        throw numeric_error("AllocationMatrix: non-finite entry");
    if (entries_.minCoeff() < 0.0)
        throw numeric_error("AllocationMatrix: negative entry " +
                            std::to_string(entries_.minCoeff()));
    for (int j = 0; j < entries_.cols(); ++j) {
        const double sum = entries_.col(j).sum();
        if (sum > 1.0 + kColumnSumSlack)
            throw numeric_error("AllocationMatrix: column " + std::to_string(j) + " sums to " +
                                std::to_string(sum));
    }
}

AllocationMatrix AllocationMatrix::midpoint(int n) {
    return AllocationMatrix(RealMatrix::Constant(n, n, 1.0 / n));
}

WitnessMatrix::WitnessMatrix(RealMatrix entries) : entries_(std::move(entries)), schatten1_(0.0) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
        throw shape_error("WitnessMatrix: square matrix required");
    if (!entries_.allFinite())
        throw numeric_error("WitnessMatrix: non-finite entry");
    if (entries_ != entries_.transpose())
        throw numeric_error("WitnessMatrix: not exactly symmetric");
    schatten1_ = schurkit::schatten1(entries_);
}

WitnessMatrix WitnessMatrix::normalized(const RealMatrix& entries) {
    WitnessMatrix raw(entries);
    if (raw.schatten1() <= 0.0)
        throw numeric_error("WitnessMatrix: cannot normalize a zero matrix");
    return WitnessMatrix(RealMatrix(entries / raw.schatten1()));
}

// ---- objective and solver ------------------------------------------------

double objective(const WitnessMatrix& t, const AllocationMatrix& b) {
    require_matching(t, b);
    return objective_raw(t.entries(), b.entries());
}

RealMatrix objective_gradient(const WitnessMatrix& t, const AllocationMatrix& b,
                              double gradient_floor) {
    require_matching(t, b);
    return gradient_raw(t.entries(), b.entries(), gradient_floor);
}

RealVector project_to_simplex(const RealVector& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0;
    double theta = u[0] - 1.0;
    for (int k = 0; k < n; ++k) {
        cum += u[k];
        const double candidate = (cum - 1.0) / (k + 1);
        if (u[k] - candidate > 0.0)
            theta = candidate;
    }
    RealVector out(n);
    for (int i = 0; i < n; ++i)
        out(i) = std::max(v(i) - theta, 0.0);
    // v - theta loses low bits when v is large, which can push the sum a
    // hair past 1; rescale so the result is always feasible
    const double sum = out.sum();
    if (sum > 1.0)
        out /= sum;
    return out;
}

SolverResult maximize_objective(const WitnessMatrix& t, const SolverOptions& opts) {
    if (opts.max_iterations < 1 || opts.relative_improvement_tolerance <= 0.0 ||
        opts.gradient_floor <= 0.0 || opts.initial_step <= 0.0 || opts.step_shrink <= 0.0 ||
        opts.step_shrink >= 1.0 || opts.sufficient_increase <= 0.0)
        throw numeric_error("maximize_objective: solver options out of range");

    const int n = t.n();
    RealMatrix b = RealMatrix::Constant(n, n, 1.0 / n);
    double value = objective_raw(t.entries(), b);
    double min_gain = std::numeric_limits<double>::infinity();
    int accepted = 0;
    bool converged = false;
    RealMatrix prev_b, prev_g;
    bool have_prev = false;

    for (int it = 0; it < opts.max_iterations; ++it) {
        const RealMatrix g = gradient_raw(t.entries(), b, opts.gradient_floor);
        // Spectral (Barzilai-Borwein) trial step; a plain unit step zigzags
        // on the kinked faces and crawls. Backtracking keeps it safe.
        double step = opts.initial_step;
        if (have_prev) {
            const RealMatrix s = b - prev_b;
            const RealMatrix y = g - prev_g;
            const double sy = (s.array() * y.array()).sum();
            const double ss = s.squaredNorm();
            if (sy < 0.0 && ss > 0.0)
                step = std::clamp(ss / -sy, 1e-12, 1e12);
        }
        prev_b = b;
        prev_g = g;
        have_prev = true;
        RealMatrix next;
        double next_value = value;
        bool step_taken = false;
        // Armijo backtracking along the projection arc; a step with no
        // first-order progress means the iterate is stationary.
        for (int bt = 0; bt < 64; ++bt) {
            RealMatrix trial = project_columns(b + step * g);
            const double inner = (g.array() * (trial - b).array()).sum();
            if (inner <= 0.0)
                break;
            const double trial_value = objective_raw(t.entries(), trial);
            if (trial_value - value >= opts.sufficient_increase * inner) {
                next = std::move(trial);
                next_value = trial_value;
                step_taken = true;
                break;
            }
            step *= opts.step_shrink;
        }
        if (!step_taken) {
            converged = true;
            break;
        }
        const double gain = next_value - value;
        min_gain = std::min(min_gain, gain);
        b = std::move(next);
        value = next_value;
        ++accepted;
        if (gain < opts.relative_improvement_tolerance * std::max(1.0, std::abs(value))) {
            converged = true;
            break;
        }
    }

    SolverResult result{AllocationMatrix(std::move(b)), value, accepted, converged,
                        accepted > 0 ? min_gain : 0.0};
    return result;
}

std::pair<ScalarMatrix, ScalarMatrix> realize_optimizers(const WitnessMatrix& t,
                                                         const AllocationMatrix& b) {
    require_matching(t, b);
    const int n = t.n();
    Matrix c(n, n);
    Matrix r = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            c(i, j) = Complex(std::sqrt(b(i, j)), 0.0);
    for (int i = 0; i < n; ++i) {
        RealVector dir(n);
        for (int j = 0; j < n; ++j)
            dir(j) = c(i, j).real() * t(j, i);
        const double len = dir.norm();
        if (len > 0.0)
            for (int j = 0; j < n; ++j)
                r(i, j) = Complex(dir(j) / len, 0.0);
    }
    return {ScalarMatrix(std::move(r)), ScalarMatrix(std::move(c))};
}

Complex schur_trace(const ScalarMatrix& r, const ScalarMatrix& c, const WitnessMatrix& t) {
    if (r.rows() != t.n() || r.cols() != t.n() || c.rows() != t.n() || c.cols() != t.n())
        throw shape_error("schur_trace: factor shapes do not match the witness");
    Complex total = 0.0;
    for (int i = 0; i < t.n(); ++i)
        for (int j = 0; j < t.n(); ++j)
            total += r(i, j) * c(i, j) * t(j, i);
    return total;
}

double upper_bound(const WitnessMatrix& t) {
    return static_cast<double>(t.n()) * t.entries().cwiseAbs().maxCoeff();
}

// ---- random witnesses and spectral statistics ----------------------------

RealMatrix sample_integer_symmetric(int n, std::mt19937_64& rng) {
    if (n < 1)
        throw shape_error("sample_integer_symmetric: n must be positive");
    RealMatrix raw(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            raw(i, j) = static_cast<double>(bounded_int(rng, -99, 99));
    return 0.5 * (raw + raw.transpose());
}

RealMatrix wigner_normalize(const RealMatrix& sn, int n) {
    const double s = std::sqrt(1650.0);
    return sn / (s * std::sqrt(static_cast<double>(n)));
}

double schatten1(const RealMatrix& sym) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double empirical_f_mean(const RealMatrix& x) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(x, Eigen::EigenvaluesOnly);
    const auto& lambda = es.eigenvalues();
    double total = 0.0;
    for (int i = 0; i < lambda.size(); ++i)
        total += std::min(std::abs(lambda(i)), 2.0);
    return total / static_cast<double>(lambda.size());
}

RealMatrix sign_witness(const RealMatrix& t) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(t);
    const auto& lambda = es.eigenvalues();
    const auto& u = es.eigenvectors();
    const double threshold = kSignZeroBand * lambda.cwiseAbs().maxCoeff();
    const int n = static_cast<int>(t.rows());
    RealMatrix e = RealMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        if (lambda(k) > threshold)
            e += u.col(k) * u.col(k).transpose();
    return 2.0 * e - RealMatrix::Identity(n, n);
}

double semicircle_f_reference() {
    return 8.0 / (3.0 * std::numbers::pi);
}

// ---- the experiment ------------------------------------------------------

ExperimentReport run_witness_experiment(int n, std::uint64_t seed, const SolverOptions& opts) {
    if (n < 2)
        throw shape_error("run_witness_experiment: n must be at least 2");
    std::mt19937_64 rng(seed);
    const RealMatrix sn = sample_integer_symmetric(n, rng);
    const double s1 = schatten1(sn);
    if (s1 <= 0.0)
        throw numeric_error("run_witness_experiment: sample has zero Schatten-1 norm");

    const WitnessMatrix t{RealMatrix(sn / s1)};
    const SolverResult sol = maximize_objective(t, opts);

    ExperimentReport report;
    report.n = n;
    report.seed = seed;
    report.schatten1_raw = s1;
    report.max_value = sol.value;
    report.max_times_sqrt_n = sol.value * std::sqrt(static_cast<double>(n));
    report.upper_bound_check = 99.0 * static_cast<double>(n) / s1;
    report.semicircle_f_mean = empirical_f_mean(wigner_normalize(sn, n));
    report.support_count =
        static_cast<int>((sol.maximizer.entries().array() > kSupportThreshold).count());
    report.iterations = sol.iterations;
    report.converged = sol.converged;
    if (report.max_value > report.upper_bound_check + 1e-9)
        throw numeric_error("run_witness_experiment: solver value exceeds the analytic bound");
    return report;
}

} // namespace schurkit
