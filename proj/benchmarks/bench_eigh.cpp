// bench_eigh.cpp — Dense symmetric eigensolver throughput at the matrix
// sizes produced by typical Fock-space truncations.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "aqrm/exactdiag.hpp"
#include "aqrm/linalg.hpp"

namespace {

aqrm::linalg::Matrix random_symmetric(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    aqrm::linalg::Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = u(eng);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

void bm_eigh_random(benchmark::State& state) {
    const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        auto sys = aqrm::linalg::eigh(m);
        benchmark::DoNotOptimize(sys.values.data());
    }
}

void bm_eigh_hamiltonian(benchmark::State& state) {
    const aqrm::ModelParams p{0.7, 1.0, 0.8, 0.4};
    const int n_max = static_cast<int>(state.range(0));
    const auto h = aqrm::build_hamiltonian(p, n_max);
    for (auto _ : state) {
        auto sys = aqrm::linalg::eigh(h);
        benchmark::DoNotOptimize(sys.values.data());
    }
}

}  // namespace

BENCHMARK(bm_eigh_random)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_eigh_hamiltonian)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
