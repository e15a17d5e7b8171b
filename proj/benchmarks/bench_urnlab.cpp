#include <benchmark/benchmark.h>

#include "urnlab/allocation.hpp"
#include "urnlab/exact.hpp"

namespace {

void BM_TrialDense(benchmark::State& state) {
    const auto dist = urnlab::BoxDistribution::uniform(25'118);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    urnlab::UrnCounter counter(dist, n);
    urnlab::RandomStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(urnlab::run_trial(dist, n, 2, rng, counter, {.keep_counts = false}).overflow);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrialDense)->Arg(10'000);

// Geometric support is unbounded, so the counter uses its hash table.
void BM_TrialSparse(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto dist = urnlab::BoxDistribution::geometric(1.0 / static_cast<double>(n));
    urnlab::UrnCounter counter(dist, n);
    urnlab::RandomStream rng(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(urnlab::run_trial(dist, n, 4, rng, counter, {.keep_counts = false}).overflow);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrialSparse)->Arg(10'000)->Arg(100'000);

void BM_BinomialTail(benchmark::State& state) {
    const auto k = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(urnlab::binomial_tail(k, 3.0 / static_cast<double>(k), 3));
    }
}
BENCHMARK(BM_BinomialTail)->Arg(100)->Arg(100'000);

void BM_ExactMeanGeometric(benchmark::State& state) {
    const auto dist = urnlab::BoxDistribution::geometric(1e-2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(urnlab::exact_mean_overflow(dist, 200, 2));
    }
}
BENCHMARK(BM_ExactMeanGeometric);

}  // namespace

BENCHMARK_MAIN();
