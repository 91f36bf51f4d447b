#pragma once
//
// Batch orchestration and emission. Trials are independent work items run
// on the worker pool; results are always ordered by (n, seed) before
// emission so parallelism never changes the output.
//

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "schurkit/thinset.hpp"

namespace schurkit {

enum class OutputFormat { json, csv, text };

OutputFormat parse_format(const std::string& name);

// seeds from an inclusive "a..b" range, or seed, seed+1, ..., seed+trials-1
std::vector<std::uint64_t> expand_seeds(const std::optional<std::string>& range,
                                        std::uint64_t seed, int trials);

// ---- thinset batch -------------------------------------------------------

std::vector<ExperimentReport> run_trials(const std::vector<int>& dims,
                                         const std::vector<std::uint64_t>& seeds,
                                         const SolverOptions& opts);

struct TrialSummary {
    int n = 0;
    int trials = 0;
    double median_max_times_sqrt_n = 0.0;
    double max_max_times_sqrt_n = 0.0;
    double fraction_below_3 = 0.0;
    double fraction_below_2_5 = 0.0;
    int converged_count = 0;
};

std::vector<TrialSummary> summarize_trials(const std::vector<ExperimentReport>& reports);

void write_trials(std::ostream& out, const std::vector<ExperimentReport>& reports,
                  OutputFormat format);

// ---- semicircle batch ----------------------------------------------------

inline constexpr int kHistogramBins = 100;
inline constexpr double kHistogramLo = -2.5;
inline constexpr double kHistogramWidth = 0.05;

struct SemicircleRecord {
    int n = 0;
    std::uint64_t seed = 0;
    double f_mean = 0.0;
    // eigenvalue counts, bin width 0.05 on [-2.5, 2.5]; outliers clamp into
    // the boundary bins so the counts always sum to n
    std::vector<int> histogram;
};

SemicircleRecord semicircle_trial(int n, std::uint64_t seed);

std::vector<SemicircleRecord> run_semicircle(const std::vector<int>& dims,
                                             const std::vector<std::uint64_t>& seeds);

void write_semicircle(std::ostream& out, const std::vector<SemicircleRecord>& records,
                      OutputFormat format);

} // namespace schurkit
