// Serial reference vs OpenMP kernels on the problem sizes the library uses.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lincov/kernels.hpp"

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> v(n);
    for (auto& x : v) x = normal(rng);
    return v;
}

namespace k = lincov::kernels;

template <auto Kernel>
void lagged_products(benchmark::State& state) {
    const auto x = random_vector(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, x.size() - 1));
}

template <auto Kernel>
void symmetric_convolve(benchmark::State& state) {
    const std::size_t k_max = static_cast<std::size_t>(state.range(0));
    const auto w = random_vector(200, 2);
    const auto x = random_vector(k_max + w.size() + 1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(w, x, k_max));
}

template <auto Kernel>
void causal_filter(benchmark::State& state) {
    const auto psi = random_vector(static_cast<std::size_t>(state.range(0)), 4);
    const auto in = random_vector(200'000 + psi.size(), 5);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(psi, in));
}

}  // namespace

BENCHMARK(lagged_products<k::serial::lagged_products>)->Arg(2'000)->Arg(20'000)->Unit(benchmark::kMillisecond);
BENCHMARK(lagged_products<k::parallel::lagged_products>)->Arg(2'000)->Arg(20'000)->Unit(benchmark::kMillisecond);
BENCHMARK(symmetric_convolve<k::serial::symmetric_convolve>)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(symmetric_convolve<k::parallel::symmetric_convolve>)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(causal_filter<k::serial::causal_filter>)->Arg(64)->Arg(1'000)->Unit(benchmark::kMillisecond);
BENCHMARK(causal_filter<k::parallel::causal_filter>)->Arg(64)->Arg(1'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
