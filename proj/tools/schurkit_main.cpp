// schurkit: block Schur products, their polar-style factorizations, and the
// random-witness maximization experiment, behind one batch CLI.
//
// Exit codes: 0 success, 1 invariant failure or non-convergence,
// 2 unreadable or malformed input, 3 incompatible shapes.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurkit/blockmat.hpp"
#include "schurkit/errors.hpp"
#include "schurkit/harness.hpp"
#include "schurkit/io.hpp"
#include "schurkit/polar.hpp"
#include "schurkit/random.hpp"
#include "schurkit/thinset.hpp"
#include "schurkit/verify.hpp"

namespace {

using schurkit::Json;

// stdout unless --out was given
struct OutStream {
    std::ofstream file;
    std::ostream* stream = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file)
            throw std::runtime_error("cannot open output file " + path);
        stream = &file;
    }
};

std::pair<schurkit::BlockMatrix, schurkit::BlockMatrix> pair_from_json(const Json& doc) {
    if (doc.is_array() && doc.size() == 2)
        return {schurkit::block_matrix_from_json(doc[0]), schurkit::block_matrix_from_json(doc[1])};
    if (doc.is_object() && doc.contains("a") && doc.contains("b"))
        return {schurkit::block_matrix_from_json(doc["a"]),
                schurkit::block_matrix_from_json(doc["b"])};
    throw schurkit::parse_error("expected two matrices as [a, b] or {\"a\": ..., \"b\": ...}");
}

int run_decompose(schurkit::ProductKind kind, const std::vector<std::string>& inputs,
                  const std::vector<std::uint64_t>& random_spec, const std::string& out_path,
                  const std::string& format_name) {
    const schurkit::OutputFormat format = schurkit::parse_format(format_name);
    if (format == schurkit::OutputFormat::csv)
        throw schurkit::parse_error("decompose emits json or text, not csv");

    std::optional<schurkit::BlockMatrix> a, b;
    if (!random_spec.empty()) {
        const int n = static_cast<int>(random_spec[0]);
        const int h = static_cast<int>(random_spec[1]);
        if (n < 1 || h < 1)
            throw schurkit::parse_error("--random needs positive grid and block dimensions");
        std::mt19937_64 rng(random_spec[2]);
        if (kind == schurkit::ProductKind::schur) {
            a = schurkit::random_uniform_block_matrix(n, h, rng);
            b = schurkit::random_uniform_block_matrix(n, h, rng);
        } else {
            a = schurkit::random_block_matrix(schurkit::random_dims(n, 1, h, rng),
                                              schurkit::random_dims(n, 1, h, rng), rng);
            b = schurkit::random_block_matrix(schurkit::random_dims(n, 1, h, rng),
                                              schurkit::random_dims(n, 1, h, rng), rng);
        }
    } else if (inputs.size() == 2) {
        a = schurkit::load_block_matrix(inputs[0]);
        b = schurkit::load_block_matrix(inputs[1]);
    } else if (inputs.size() == 1) {
        auto [pa, pb] = pair_from_json(schurkit::load_json(inputs[0]));
        a = std::move(pa);
        b = std::move(pb);
    } else {
        Json doc;
        try {
            doc = Json::parse(std::cin);
        } catch (const nlohmann::json::parse_error& e) {
            throw schurkit::parse_error(std::string("stdin: ") + e.what());
        }
        auto [pa, pb] = pair_from_json(doc);
        a = std::move(pa);
        b = std::move(pb);
    }

    const schurkit::SchurDecomposition dec = kind == schurkit::ProductKind::schur
                                                 ? schurkit::decompose_schur(*a, *b)
                                                 : schurkit::decompose_schur_tensor(*a, *b);
    const schurkit::DecompositionReport report = schurkit::verify_decomposition(dec, *a, *b, kind);

    OutStream os;
    os.open(out_path);
    if (format == schurkit::OutputFormat::json) {
        Json out;
        out["left"] = schurkit::to_json(dec.left);
        out["middle"] = schurkit::to_json(dec.middle);
        out["right"] = schurkit::to_json(dec.right);
        out["diagnostics"] = schurkit::diagnostics_json(report);
        *os.stream << out.dump(2) << "\n";
    } else {
        *os.stream << "middle_norm                   " << report.middle_norm << "\n"
                   << "reconstruction_error_abs      " << report.reconstruction_error_abs << "\n"
                   << "reconstruction_error_rel      " << report.reconstruction_error_rel << "\n"
                   << "max_partial_isometry_residual " << report.max_partial_isometry_residual
                   << "\n";
        for (const auto& c : report.checks)
            *os.stream << (c.pass ? "pass " : "FAIL ") << c.name << " (measured " << c.measured
                       << ", tolerance " << c.tolerance << ")\n";
    }
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"block Schur and Schur tensor products: factorizations and experiments"};
    app.require_subcommand(1);

    // decompose / decompose-tensor
    struct DecomposeArgs {
        std::vector<std::string> inputs;
        std::vector<std::uint64_t> random_spec;
        std::string out;
        std::string format = "json";
    };
    DecomposeArgs dargs[2];
    CLI::App* sub_decompose[2];
    sub_decompose[0] = app.add_subcommand(
        "decompose", "factor a blockwise product A,B into diagonal-contraction-diagonal");
    sub_decompose[1] = app.add_subcommand(
        "decompose-tensor", "same factorization for the blockwise Kronecker product");
    for (int k = 0; k < 2; ++k) {
        auto* sub = sub_decompose[k];
        auto& args = dargs[k];
        sub->add_option("inputs", args.inputs,
                        "matrix JSON files: A B, or one combined document (default stdin)")
            ->expected(0, 2);
        sub->add_option("--random", args.random_spec,
                        "generate inputs instead: grid size, block dimension bound, seed")
            ->expected(3);
        sub->add_option("--out", args.out, "output path (default stdout)");
        sub->add_option("--format", args.format, "json or text")
            ->check(CLI::IsMember({"json", "text", "csv"}));
    }

    // thinset
    std::vector<int> dims;
    std::uint64_t seed = 1;
    std::optional<std::string> seed_range;
    int trials = 1;
    int max_iter = schurkit::SolverOptions{}.max_iterations;
    double tol = schurkit::SolverOptions{}.relative_improvement_tolerance;
    std::string out_path;
    std::string format = "json";
    auto* sub_thinset = app.add_subcommand(
        "thinset", "maximize |tr((R o C)T)| against random normalized symmetric witnesses");
    sub_thinset->add_option("-n,--dim", dims, "matrix dimensions (repeatable; default 2 4 8 16 32 50)")
        ->check(CLI::Range(2, 1 << 20));
    sub_thinset->add_option("--seed", seed, "first seed (default 1)");
    sub_thinset->add_option("--seeds", seed_range, "inclusive seed range a..b (overrides --seed/--trials)");
    sub_thinset->add_option("--trials", trials, "seeds per dimension, counting up from --seed")
        ->check(CLI::PositiveNumber);
    sub_thinset->add_option("--max-iter", max_iter, "solver iteration cap")
        ->check(CLI::PositiveNumber);
    sub_thinset->add_option("--tol", tol, "solver relative improvement tolerance");
    sub_thinset->add_option("--out", out_path, "output path (default stdout)");
    sub_thinset->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    // semicircle
    std::vector<int> sdims;
    std::uint64_t sseed = 1;
    std::optional<std::string> sseed_range;
    int strials = 1;
    std::string sout_path;
    std::string sformat = "json";
    auto* sub_semi = app.add_subcommand(
        "semicircle", "eigenvalue statistics of normalized random symmetric matrices");
    sub_semi->add_option("-n,--dim", sdims, "matrix dimensions (repeatable; default 200)")
        ->check(CLI::PositiveNumber);
    sub_semi->add_option("--seed", sseed, "first seed (default 1)");
    sub_semi->add_option("--seeds", sseed_range, "inclusive seed range a..b (overrides --seed/--trials)");
    sub_semi->add_option("--trials", strials, "seeds per dimension, counting up from --seed")
        ->check(CLI::PositiveNumber);
    sub_semi->add_option("--out", sout_path, "output path (default stdout)");
    sub_semi->add_option("--format", sformat, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    // verify
    schurkit::VerifyOptions vopts;
    std::string vout_path;
    auto* sub_verify =
        app.add_subcommand("verify", "run the randomized invariant suite over all modules");
    sub_verify->add_option("--sizes", vopts.sizes, "instance sizes (repeatable; default 2 3 5)");
    sub_verify->add_option("--seed", vopts.seed, "suite seed (default 1)");
    sub_verify->add_option("--reps", vopts.repetitions, "instances per size (default 3)")
        ->check(CLI::PositiveNumber);
    sub_verify->add_option("--perturb", vopts.perturb,
                           "scale the decomposition middle factor by 1+x to force failures");
    sub_verify->add_option("--out", vout_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_decompose[0]->parsed())
            return run_decompose(schurkit::ProductKind::schur, dargs[0].inputs,
                                 dargs[0].random_spec, dargs[0].out, dargs[0].format);
        if (sub_decompose[1]->parsed())
            return run_decompose(schurkit::ProductKind::schur_tensor, dargs[1].inputs,
                                 dargs[1].random_spec, dargs[1].out, dargs[1].format);

        if (sub_thinset->parsed()) {
            if (dims.empty()) dims = {2, 4, 8, 16, 32, 50};
            schurkit::SolverOptions sopts;
            sopts.max_iterations = max_iter;
            sopts.relative_improvement_tolerance = tol;
            const auto seeds = schurkit::expand_seeds(seed_range, seed, trials);
            const auto reports = schurkit::run_trials(dims, seeds, sopts);
            OutStream os;
            os.open(out_path);
            schurkit::write_trials(*os.stream, reports, schurkit::parse_format(format));
            for (const auto& r : reports)
                if (!r.converged) return 1;
            return 0;
        }

        if (sub_semi->parsed()) {
            if (sdims.empty()) sdims = {200};
            const auto seeds = schurkit::expand_seeds(sseed_range, sseed, strials);
            const auto records = schurkit::run_semicircle(sdims, seeds);
            OutStream os;
            os.open(sout_path);
            schurkit::write_semicircle(*os.stream, records, schurkit::parse_format(sformat));
            return 0;
        }

        if (sub_verify->parsed()) {
            const auto checks = schurkit::run_invariant_suite(vopts);
            OutStream os;
            os.open(vout_path);
            for (const auto& c : checks)
                *os.stream << (c.pass ? "pass " : "FAIL ") << std::left << std::setw(30) << c.name
                           << " measured " << std::setw(14) << c.measured << " tolerance "
                           << c.tolerance << "\n";
            return schurkit::all_pass(checks) ? 0 : 1;
        }
    } catch (const schurkit::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const schurkit::shape_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
