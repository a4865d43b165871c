// Microbenchmarks for the hot paths: sampling, dense eigendecomposition,
// fixed-point Stieltjes solves, and profile extraction.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "spiked/analytic.hpp"
#include "spiked/eig.hpp"
#include "spiked/experiments.hpp"
#include "spiked/overlap.hpp"
#include "spiked/sampler.hpp"

namespace {

spiked::SpikedModelConfig additive_config(int n) {
    spiked::SpikedModelConfig config;
    config.n = n;
    config.theta = 2.0;
    config.seed = 1;
    return config;
}

spiked::SpikedModelConfig multiplicative_config(int n) {
    spiked::SpikedModelConfig config;
    config.model = spiked::Model::multiplicative;
    config.n = n;
    config.alpha = 4.0;
    config.theta = 2.0;
    config.base = spiked::AtomicMeasure::point(1.0);
    config.seed = 1;
    return config;
}

void BM_SampleAdditive(benchmark::State& state) {
    const auto config = additive_config(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spiked::sample(config).matrix);
    }
}
BENCHMARK(BM_SampleAdditive)->Arg(200)->Arg(400)->Arg(800);

void BM_SampleMultiplicative(benchmark::State& state) {
    const auto config = multiplicative_config(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spiked::sample(config).matrix);
    }
}
BENCHMARK(BM_SampleMultiplicative)->Arg(200)->Arg(400);

void BM_SymEig(benchmark::State& state) {
    const auto realized = spiked::sample(additive_config(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spiked::sym_eig(realized.matrix).eigenvalues);
    }
}
BENCHMARK(BM_SymEig)->Arg(200)->Arg(400)->Arg(800);

void BM_FixedPointAdditive(benchmark::State& state) {
    const auto base = spiked::AtomicMeasure({{-1.0, 0.5}, {1.0, 0.5}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(spiked::solve_free_additive(base, {0.3, 0.05}));
    }
}
BENCHMARK(BM_FixedPointAdditive);

void BM_FixedPointMultiplicative(benchmark::State& state) {
    const auto base = spiked::AtomicMeasure({{1.0, 0.5}, {2.0, 0.5}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(spiked::solve_free_multiplicative(base, 2.0, {3.0, 0.05}));
    }
}
BENCHMARK(BM_FixedPointMultiplicative);

void BM_WindowedProfile(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto realized = spiked::sample(additive_config(n));
    const auto decomposition = spiked::sym_eig(realized.matrix);
    const auto mu = spiked::spectral_measure_in_direction(decomposition, realized.spike_direction);
    const std::vector<double> grid = spiked::GridSpec{-1.8, 1.8, 0.05}.points();
    const double epsilon = std::pow(n, 0.1) / std::sqrt(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spiked::windowed_profile(mu, grid, epsilon).estimates);
    }
}
BENCHMARK(BM_WindowedProfile)->Arg(400)->Arg(800);

}  // namespace

BENCHMARK_MAIN();
