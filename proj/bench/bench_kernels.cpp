#include "cml/analysis.hpp"
#include "cml/suites.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace cml;

namespace {

Instance game(std::size_t n, std::size_t m) {
    Rng rng = case_rng(3, "bench", n * 100 + m);
    return random_instance(rng, n, m, 20);
}

void args(benchmark::internal::Benchmark* b) {
    b->Args({6, 3})->Args({8, 3})->Args({7, 4})->Args({9, 3});
}

void BM_EnumerateParallel(benchmark::State& state) {
    const Instance inst = game(state.range(0), state.range(1));
    const Mechanism mech(CoefficientFunction::dcoord(2));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_equilibria(mech, inst));
    state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_EnumerateParallel)->Apply(args)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_EnumerateSerial(benchmark::State& state) {
    const Instance inst = game(state.range(0), state.range(1));
    const Mechanism mech(CoefficientFunction::dcoord(2));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_equilibria_serial(mech, inst));
}
BENCHMARK(BM_EnumerateSerial)->Apply(args)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_OptimalParallel(benchmark::State& state) {
    const Instance inst = game(state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(optimal_makespan_exhaustive(inst));
    state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_OptimalParallel)->Apply(args)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_OptimalSerial(benchmark::State& state) {
    const Instance inst = game(state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(optimal_makespan_serial(inst));
}
BENCHMARK(BM_OptimalSerial)->Apply(args)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_OptimalBranchAndBound(benchmark::State& state) {
    const Instance inst = game(state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(optimal_makespan_bnb(inst));
}
BENCHMARK(BM_OptimalBranchAndBound)->Apply(args)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LambdaClosedForm(benchmark::State& state) {
    Rng rng = case_rng(3, "bench-lambda", 0);
    const auto w = random_weights(rng, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernel::lambda_set_dcoord(4, w));
}
BENCHMARK(BM_LambdaClosedForm)->Arg(4)->Arg(6);

void BM_LambdaEnumeration(benchmark::State& state) {
    Rng rng = case_rng(3, "bench-lambda", 0);
    const auto w = random_weights(rng, state.range(0));
    const auto cf = CoefficientFunction::dcoord(4);
    for (auto _ : state) benchmark::DoNotOptimize(kernel::lambda_bruteforce(cf, w));
}
BENCHMARK(BM_LambdaEnumeration)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
