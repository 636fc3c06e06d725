// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "lifemodes/lifetable.hpp"
#include "lifemodes/parallel.hpp"
#include "test_support.hpp"

namespace {

using namespace lifemodes;

const ScalarFn kIntegrand = [](double x) { return std::pow(x, 12) * std::exp(-1.1 * x * x); };

const FieldFn kChain = [](std::span<const double> phi) {
    double e = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        e -= 1.1 * phi[i] * phi[i];
        if (i + 1 < phi.size()) e += phi[i] * phi[i + 1];
    }
    return std::exp(e);
};

void BM_SimpsonSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial::simpson(kIntegrand, 0.0, 12.0, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimpsonParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simpson(kIntegrand, 0.0, 12.0, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GridSerial(benchmark::State& state) {
    const auto dims = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial::simpson_grid(kChain, dims, 9.0, 120));
}

void BM_GridParallel(benchmark::State& state) {
    const auto dims = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simpson_grid(kChain, dims, 9.0, 120));
}

ReducedMatrix random_chain(std::size_t dim) {
    std::mt19937_64 rng(42);
    const RMatrix t = testing::random_substochastic(rng, dim, 0.9, 0.999);
    std::vector<StateLabel> alive;
    for (std::size_t k = 2; k <= dim + 1; ++k) alive.emplace_back(BasisState{static_cast<int>(k)});
    return {std::move(alive), ComplexMatrix::from_real(t)};
}

void BM_LifeTablesSerial(benchmark::State& state) {
    const ReducedMatrix r = random_chain(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::life_tables(r));
}

void BM_LifeTablesParallel(benchmark::State& state) {
    const ReducedMatrix r = random_chain(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(life_tables(r));
}

} // namespace

BENCHMARK(BM_SimpsonSerial)->Arg(1 << 14)->Arg(1 << 18)->Arg(1 << 20);
BENCHMARK(BM_SimpsonParallel)->Arg(1 << 14)->Arg(1 << 18)->Arg(1 << 20);
BENCHMARK(BM_GridSerial)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LifeTablesSerial)->Arg(8)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LifeTablesParallel)->Arg(8)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
