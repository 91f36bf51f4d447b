#include "schurkit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include <json.hpp>

#include "schurkit/errors.hpp"
#include "schurkit/threading.hpp"

namespace schurkit {

namespace {

using Json = nlohmann::ordered_json;

// fixed-width round-trip formatting so csv/text output is byte-stable
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string num6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

Json trial_json(const ExperimentReport& r) {
    Json j;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["schatten1_raw"] = r.schatten1_raw;
    j["max_value"] = r.max_value;
    j["max_times_sqrt_n"] = r.max_times_sqrt_n;
    j["bound_99n_over_s1"] = r.upper_bound_check;
    j["semicircle_f_mean"] = r.semicircle_f_mean;
    j["support_count"] = r.support_count;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    return j;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    if (values.size() % 2 == 1)
        return values[m];
    return 0.5 * (values[m - 1] + values[m]);
}

template <typename Record>
void sort_by_n_seed(std::vector<Record>& records) {
    std::stable_sort(records.begin(), records.end(), [](const Record& x, const Record& y) {
        return x.n != y.n ? x.n < y.n : x.seed < y.seed;
    });
}

} // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "text") return OutputFormat::text;
    throw parse_error("unknown output format \"" + name + "\"");
}

std::vector<std::uint64_t> expand_seeds(const std::optional<std::string>& range,
                                        std::uint64_t seed, int trials) {
    if (trials < 1)
        throw parse_error("trials must be at least 1");
    std::vector<std::uint64_t> seeds;
    if (range) {
        const auto sep = range->find("..");
        if (sep == std::string::npos)
            throw parse_error("seed range \"" + *range + "\" is not of the form a..b");
        std::uint64_t lo = 0, hi = 0;
        try {
            std::size_t used = 0;
            lo = std::stoull(range->substr(0, sep), &used);
            if (used != sep) throw std::invalid_argument("trailing characters");
            hi = std::stoull(range->substr(sep + 2), &used);
            if (used != range->size() - sep - 2) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw parse_error("seed range \"" + *range + "\" is not of the form a..b");
        }
        if (hi < lo)
            throw parse_error("seed range \"" + *range + "\" is empty");
        for (std::uint64_t s = lo;; ++s) {
            seeds.push_back(s);
            if (s == hi) break;
        }
        return seeds;
    }
    seeds.reserve(trials);
    for (int k = 0; k < trials; ++k)
        seeds.push_back(seed + static_cast<std::uint64_t>(k));
    return seeds;
}

// ---- thinset batch -------------------------------------------------------

std::vector<ExperimentReport> run_trials(const std::vector<int>& dims,
                                         const std::vector<std::uint64_t>& seeds,
                                         const SolverOptions& opts) {
    struct Item {
        int n;
        std::uint64_t seed;
    };
    std::vector<Item> items;
    items.reserve(dims.size() * seeds.size());
    for (int n : dims)
        for (std::uint64_t seed : seeds)
            items.push_back({n, seed});

    std::vector<ExperimentReport> reports(items.size());
    const int count = static_cast<int>(items.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads::max_threads())
    for (int k = 0; k < count; ++k)
        reports[k] = run_witness_experiment(items[k].n, items[k].seed, opts);
    sort_by_n_seed(reports);
    return reports;
}

std::vector<TrialSummary> summarize_trials(const std::vector<ExperimentReport>& reports) {
    std::map<int, std::vector<const ExperimentReport*>> by_n;
    for (const auto& r : reports)
        by_n[r.n].push_back(&r);

    std::vector<TrialSummary> out;
    for (const auto& [n, group] : by_n) {
        TrialSummary s;
        s.n = n;
        s.trials = static_cast<int>(group.size());
        std::vector<double> values;
        int below_3 = 0, below_2_5 = 0;
        for (const auto* r : group) {
            values.push_back(r->max_times_sqrt_n);
            if (r->max_times_sqrt_n < 3.0) ++below_3;
            if (r->max_times_sqrt_n < 2.5) ++below_2_5;
            if (r->converged) ++s.converged_count;
        }
        s.median_max_times_sqrt_n = median(values);
        s.max_max_times_sqrt_n = *std::max_element(values.begin(), values.end());
        s.fraction_below_3 = static_cast<double>(below_3) / s.trials;
        s.fraction_below_2_5 = static_cast<double>(below_2_5) / s.trials;
        out.push_back(s);
    }
    return out;
}

void write_trials(std::ostream& out, const std::vector<ExperimentReport>& reports,
                  OutputFormat format) {
    const auto summaries = summarize_trials(reports);
    switch (format) {
    case OutputFormat::json: {
        for (const auto& r : reports)
            out << trial_json(r).dump() << "\n";
        Json agg = Json::array();
        for (const auto& s : summaries) {
            Json j;
            j["n"] = s.n;
            j["trials"] = s.trials;
            j["median_max_times_sqrt_n"] = s.median_max_times_sqrt_n;
            j["max_max_times_sqrt_n"] = s.max_max_times_sqrt_n;
            j["fraction_below_3"] = s.fraction_below_3;
            j["fraction_below_2_5"] = s.fraction_below_2_5;
            j["converged"] = s.converged_count;
            agg.push_back(std::move(j));
        }
        out << Json{{"summary", std::move(agg)}}.dump() << "\n";
        break;
    }
    case OutputFormat::csv: {
        out << "n,seed,schatten1_raw,max_value,max_times_sqrt_n,bound_99n_over_s1,"
               "semicircle_f_mean,support_count,iterations,converged\n";
        for (const auto& r : reports)
            out << r.n << "," << r.seed << "," << num(r.schatten1_raw) << "," << num(r.max_value)
                << "," << num(r.max_times_sqrt_n) << "," << num(r.upper_bound_check) << ","
                << num(r.semicircle_f_mean) << "," << r.support_count << "," << r.iterations << ","
                << (r.converged ? 1 : 0) << "\n";
        break;
    }
    case OutputFormat::text: {
        for (const auto& r : reports)
            out << "n=" << r.n << " seed=" << r.seed << "  value=" << num6(r.max_value)
                << "  value*sqrt(n)=" << num6(r.max_times_sqrt_n)
                << "  bound=" << num6(r.upper_bound_check) << "  support=" << r.support_count
                << (r.converged ? "" : "  NOT CONVERGED") << "\n";
        for (const auto& s : summaries)
            out << "n=" << s.n << ": value*sqrt(n) vs 3 -> median " << num6(s.median_max_times_sqrt_n)
                << ", max " << num6(s.max_max_times_sqrt_n) << ", below 3: "
                << num6(100.0 * s.fraction_below_3) << "%, below 2.5: "
                << num6(100.0 * s.fraction_below_2_5) << "% (" << s.trials << " trials)\n";
        break;
    }
    }
}

// ---- semicircle batch ----------------------------------------------------

SemicircleRecord semicircle_trial(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const RealMatrix sn = sample_integer_symmetric(n, rng);
    const RealMatrix x = wigner_normalize(sn, n);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(x, Eigen::EigenvaluesOnly);
    const auto& lambda = es.eigenvalues();

    SemicircleRecord rec;
    rec.n = n;
    rec.seed = seed;
    rec.histogram.assign(kHistogramBins, 0);
    double total = 0.0;
    for (int i = 0; i < lambda.size(); ++i) {
        total += std::min(std::abs(lambda(i)), 2.0);
        int bin = static_cast<int>(std::floor((lambda(i) - kHistogramLo) / kHistogramWidth));
        bin = std::clamp(bin, 0, kHistogramBins - 1);
        ++rec.histogram[bin];
    }
    rec.f_mean = total / static_cast<double>(n);
    return rec;
}

std::vector<SemicircleRecord> run_semicircle(const std::vector<int>& dims,
                                             const std::vector<std::uint64_t>& seeds) {
    struct Item {
        int n;
        std::uint64_t seed;
    };
    std::vector<Item> items;
    items.reserve(dims.size() * seeds.size());
    for (int n : dims)
        for (std::uint64_t seed : seeds)
            items.push_back({n, seed});

    std::vector<SemicircleRecord> records(items.size());
    const int count = static_cast<int>(items.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads::max_threads())
    for (int k = 0; k < count; ++k)
        records[k] = semicircle_trial(items[k].n, items[k].seed);
    sort_by_n_seed(records);
    return records;
}

void write_semicircle(std::ostream& out, const std::vector<SemicircleRecord>& records,
                      OutputFormat format) {
    const double reference = semicircle_f_reference();
    switch (format) {
    case OutputFormat::json: {
        for (const auto& r : records) {
            Json j;
            j["n"] = r.n;
            j["seed"] = r.seed;
            j["f_mean"] = r.f_mean;
            j["reference"] = reference;
            j["bin_lo"] = kHistogramLo;
            j["bin_width"] = kHistogramWidth;
            j["histogram"] = r.histogram;
            out << j.dump() << "\n";
        }
        break;
    }
    case OutputFormat::csv: {
        out << "n,seed,f_mean,reference";
        for (int b = 0; b < kHistogramBins; ++b)
            out << ",bin" << b;
        out << "\n";
        for (const auto& r : records) {
            out << r.n << "," << r.seed << "," << num(r.f_mean) << "," << num(reference);
            for (int count : r.histogram)
                out << "," << count;
            out << "\n";
        }
        break;
    }
    case OutputFormat::text: {
        for (const auto& r : records)
            out << "n=" << r.n << " seed=" << r.seed << "  <L_X, f>=" << num6(r.f_mean)
                << "  reference 8/(3*pi)=" << num6(reference)
                << "  |diff|=" << num6(std::abs(r.f_mean - reference)) << "\n";
        break;
    }
    }
}

} // namespace schurkit
