// bench_berry.cpp — Geometric-phase evaluation along discretized loops.

#include <benchmark/benchmark.h>

#include "aqrm/berry.hpp"

namespace {

aqrm::PairField reference_field() {
    aqrm::PairField f;
    f.delta = 1.0;
    f.omega = 1.0;
    f.idx = aqrm::BlockIndex{2, 0};
    f.kind = aqrm::TunnelingKind::gaa;
    return f;
}

void bm_wilson_loop(benchmark::State& state) {
    const auto field = reference_field();
    const auto loop =
        aqrm::rectangle_loop(0.15, 0.55, -0.3, 0.3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto result = aqrm::wilson_berry_phase(field, loop, aqrm::Band::lower);
        benchmark::DoNotOptimize(result.phase);
    }
}

void bm_analytic_winding(benchmark::State& state) {
    const auto field = reference_field();
    const auto loop =
        aqrm::rectangle_loop(0.15, 0.55, -0.3, 0.3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto result = aqrm::berry_phase(field, loop, aqrm::Band::lower);
        benchmark::DoNotOptimize(result.phase);
    }
}

}  // namespace

BENCHMARK(bm_wilson_loop)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_analytic_winding)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
