// Worker-pool kernels against their serial twins. Grid sizes are picked so
// the parallel win is visible but a full run stays in seconds; SCHURKIT_THREADS
// narrows the pool for scaling measurements.

#include <random>

#include <benchmark/benchmark.h>

#include "schurkit/blockmat.hpp"
#include "schurkit/polar.hpp"
#include "schurkit/random.hpp"
#include "schurkit/reference.hpp"
#include "schurkit/thinset.hpp"
#include "schurkit/harness.hpp"

namespace {

using namespace schurkit;

BlockMatrix make_uniform(int grid, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_uniform_block_matrix(grid, h, rng);
}

BlockMatrix make_rect(int grid, int max_dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_block_matrix(random_dims(grid, 1, max_dim, rng),
                               random_dims(grid, 1, max_dim, rng), rng);
}

void BM_schur_product(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    const BlockMatrix a = make_uniform(grid, 16, 1);
    const BlockMatrix b = make_uniform(grid, 16, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(schur_product(a, b));
}

void BM_schur_product_serial(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    const BlockMatrix a = make_uniform(grid, 16, 1);
    const BlockMatrix b = make_uniform(grid, 16, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(ref::schur_product(a, b));
}

void BM_schur_tensor_product(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    const BlockMatrix a = make_rect(grid, 6, 1);
    const BlockMatrix b = make_rect(grid, 6, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(schur_tensor_product(a, b));
}

void BM_schur_tensor_product_serial(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    const BlockMatrix a = make_rect(grid, 6, 1);
    const BlockMatrix b = make_rect(grid, 6, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(ref::schur_tensor_product(a, b));
}

void BM_diag_row_gram(benchmark::State& state) {
    const BlockMatrix a = make_uniform(static_cast<int>(state.range(0)), 16, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(diag_row_gram(a));
}

void BM_diag_row_gram_serial(benchmark::State& state) {
    const BlockMatrix a = make_uniform(static_cast<int>(state.range(0)), 16, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(ref::diag_row_gram(a));
}

void BM_row_polar_factor(benchmark::State& state) {
    const BlockMatrix a = make_uniform(static_cast<int>(state.range(0)), 8, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(row_polar_factor(a));
}

void BM_row_polar_factor_serial(benchmark::State& state) {
    const BlockMatrix a = make_uniform(static_cast<int>(state.range(0)), 8, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(ref::row_polar_factor(a));
}

void BM_witness_trials(benchmark::State& state) {
    const std::vector<int> dims{static_cast<int>(state.range(0))};
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials(dims, seeds, SolverOptions{}));
}

void BM_witness_trials_serial(benchmark::State& state) {
    const std::vector<int> dims{static_cast<int>(state.range(0))};
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
    for (auto _ : state)
        benchmark::DoNotOptimize(ref::run_trials(dims, seeds, SolverOptions{}));
}

} // namespace

BENCHMARK(BM_schur_product)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_schur_product_serial)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_schur_tensor_product)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_schur_tensor_product_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_diag_row_gram)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_diag_row_gram_serial)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_row_polar_factor)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_row_polar_factor_serial)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_witness_trials)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_witness_trials_serial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
