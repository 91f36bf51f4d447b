#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "schurkit/blockmat.hpp"
#include "schurkit/io.hpp"

// End-to-end runs of the installed binary; SCHURKIT_CLI_PATH is injected by
// the build so the tests always exercise the matching executable.

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("schurkit_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

CliResult run_cli(const std::string& args, const std::string& stdin_data = "",
                  const std::string& env_prefix = "") {
    const fs::path out_path = work_dir() / "stdout.txt";
    const fs::path err_path = work_dir() / "stderr.txt";
    const fs::path in_path = work_dir() / "stdin.txt";
    spit(in_path, stdin_data);

    std::string cmd = env_prefix;
    if (!cmd.empty()) cmd += " ";
    cmd += std::string(SCHURKIT_CLI_PATH) + " " + args;
    cmd += " < " + in_path.string();
    cmd += " > " + out_path.string();
    cmd += " 2> " + err_path.string();

    CliResult r;
    const int status = std::system(cmd.c_str());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

fs::path write_matrix(const std::string& name, const schurkit::BlockMatrix& m) {
    const fs::path p = work_dir() / name;
    spit(p, schurkit::to_json(m).dump());
    return p;
}

} // namespace

TEST_CASE("decompose --random emits the three factors plus diagnostics") {
    const auto r = run_cli("decompose --random 3 2 7");
    REQUIRE(r.code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc.contains("left"));
    CHECK(doc.contains("middle"));
    CHECK(doc.contains("right"));
    REQUIRE(doc.contains("diagnostics"));
    const Json& diag = doc["diagnostics"];
    CHECK(diag.at("middle_norm").get<double>() <= 1.0 + 1e-9);
    CHECK(diag.at("reconstruction_error_rel").get<double>() < 1e-9);
    CHECK(diag.contains("max_partial_isometry_residual"));
}

TEST_CASE("decompose-tensor --random works the same way") {
    const auto r = run_cli("decompose-tensor --random 2 2 5");
    REQUIRE(r.code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc.contains("left"));
    CHECK(doc.contains("middle"));
    CHECK(doc.contains("right"));
}

TEST_CASE("decompose of identities from files reports zero residuals") {
    const auto id = schurkit::BlockMatrix::block_identity({1, 1, 1});
    const auto pa = write_matrix("id_a.json", id);
    const auto pb = write_matrix("id_b.json", id);
    const auto r = run_cli("decompose " + pa.string() + " " + pb.string());
    REQUIRE(r.code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["diagnostics"]["reconstruction_error_abs"].get<double>() == 0.0);
}

TEST_CASE("decompose reads a combined pair document from stdin") {
    const auto id = schurkit::to_json(schurkit::BlockMatrix::block_identity({1, 1}));
    Json pair;
    pair["a"] = id;
    pair["b"] = id;
    const auto r = run_cli("decompose", pair.dump());
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).contains("left"));
}

TEST_CASE("incompatible grids exit with the shape code") {
    const auto pa = write_matrix("mismatch_a.json", schurkit::BlockMatrix::block_identity({1, 1}));
    const auto pb = write_matrix("mismatch_b.json", schurkit::BlockMatrix::block_identity({1, 1, 1}));
    const auto r = run_cli("decompose " + pa.string() + " " + pb.string());
    CHECK(r.code == 3);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("malformed json exits with the parse code") {
    const fs::path bad = work_dir() / "bad.json";
    spit(bad, "{ this is not json");
    const auto r = run_cli("decompose " + bad.string() + " " + bad.string());
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("unknown flags exit with the parse code") {
    const auto r = run_cli("decompose --no-such-flag");
    CHECK(r.code == 2);
}

TEST_CASE("decompose rejects csv output") {
    const auto r = run_cli("decompose --random 2 1 1 --format csv");
    CHECK(r.code == 2);
    CHECK(r.err.find("csv") != std::string::npos);
}

TEST_CASE("thinset output is deterministic and seed-range equivalent") {
    const auto a = run_cli("thinset -n 8 --seeds 1..3");
    const auto b = run_cli("thinset -n 8 --seeds 1..3");
    const auto c = run_cli("thinset -n 8 --seed 1 --trials 3");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(!a.out.empty());
}

TEST_CASE("thinset is independent of the worker thread count") {
    const auto many = run_cli("thinset -n 8 -n 12 --seeds 1..4");
    const auto one = run_cli("thinset -n 8 -n 12 --seeds 1..4", "", "SCHURKIT_THREADS=1");
    REQUIRE(many.code == 0);
    REQUIRE(one.code == 0);
    CHECK(many.out == one.out);
}

TEST_CASE("thinset csv starts with the documented header") {
    const auto r = run_cli("thinset -n 4 --trials 2 --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("n,seed,schatten1_raw,max_value,max_times_sqrt_n,"
                      "bound_99n_over_s1,semicircle_f_mean,support_count,"
                      "iterations,converged\n", 0) == 0);
}

TEST_CASE("thinset signals non-convergence through the exit code") {
    const auto r = run_cli("thinset -n 50 --trials 1 --max-iter 1");
    CHECK(r.code == 1);
}

TEST_CASE("semicircle emits one record per trial with a full histogram") {
    const auto r = run_cli("semicircle -n 16 --seed 2 --trials 1");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out.substr(0, r.out.find('\n')));
    CHECK(j.at("n").get<int>() == 16);
    int total = 0;
    for (const auto& c : j.at("histogram"))
        total += c.get<int>();
    CHECK(total == 16);
}

TEST_CASE("verify passes cleanly and honours --sizes") {
    const auto r = run_cli("verify --sizes 2 --sizes 3 --reps 1");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify --perturb forces invariant failures and exit code 1") {
    const auto r = run_cli("verify --sizes 2 --reps 1 --perturb 0.5");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("--out writes the report to a file instead of stdout") {
    const fs::path target = work_dir() / "report.json";
    std::error_code ec;
    fs::remove(target, ec);
    const auto r = run_cli("decompose --random 2 1 3 --out " + target.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    REQUIRE(fs::exists(target));
    CHECK(Json::parse(slurp(target)).contains("diagnostics"));
}
