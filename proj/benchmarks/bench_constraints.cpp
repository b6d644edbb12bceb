// bench_constraints.cpp — Constraint-function evaluation and the
// bisection root scan that locates level crossings.

#include <benchmark/benchmark.h>

#include "aqrm/constraints.hpp"
#include "aqrm/model.hpp"

namespace {

void bm_normalized_constraint(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const aqrm::ModelParams p{0.9, 1.0, 0.6, 0.4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqrm::normalized_constraint(n, p));
    }
}

void bm_juddian_scan(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto scan = aqrm::juddian_roots(n, 1, 0.7, 1.0);
        benchmark::DoNotOptimize(scan.roots.data());
    }
}

}  // namespace

BENCHMARK(bm_normalized_constraint)->Arg(10)->Arg(40)->Arg(100);
BENCHMARK(bm_juddian_scan)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
