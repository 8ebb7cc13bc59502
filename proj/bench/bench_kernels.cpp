#include <benchmark/benchmark.h>

#include "urep/kernels.hpp"
#include "urep/semantics.hpp"

using namespace urep;

namespace {

// Dense operands: (1 + a + b + c + d)^n has C(n+4, 4) terms.
Polynomial operand(std::uint64_t n) {
    const Polynomial base = 1 + Polynomial::variable("a") + Polynomial::variable("b") + Polynomial::variable("c") +
                            Polynomial::variable("d");
    return power(base, n);
}

void BM_MultiplyReference(benchmark::State& state) {
    const auto x = operand(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_reference(x, x));
    state.counters["terms"] = static_cast<double>(x.terms().size());
}

void BM_MultiplyParallel(benchmark::State& state) {
    const auto x = operand(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_parallel(x, x));
    state.counters["terms"] = static_cast<double>(x.terms().size());
}

void BM_IntervalSweepSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(interval_sweep_serial(state.range(0), 2 * state.range(0)));
}

void BM_IntervalSweepParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(interval_sweep(state.range(0), 2 * state.range(0)));
}

const CompiledSet& composites() {
    static const CompiledSet set = compile_set(*find_bundled("composites"));
    return set;
}

SuiteConfig suite_config() {
    SuiteConfig config;
    config.a_max = 20;
    config.h_bound = 10;
    config.bc_samples = 32;
    return config;
}

void BM_SuiteSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_equivalence_suite_serial(composites(), suite_config()));
}

void BM_SuiteParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_equivalence_suite(composites(), suite_config()));
}

}  // namespace

BENCHMARK(BM_MultiplyReference)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyParallel)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IntervalSweepSerial)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntervalSweepParallel)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SuiteSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuiteParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
