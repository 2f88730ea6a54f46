// Serial reference kernels against their OpenMP twins.

#include <benchmark/benchmark.h>

#include "bellsq/constants.hpp"
#include "bellsq/rearrangement.hpp"
#include "bellsq/sampling.hpp"
#include "bellsq/verification.hpp"

namespace {

bellsq::ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? bellsq::ExecPolicy::Serial : bellsq::ExecPolicy::Parallel;
}

void BM_TailGrid(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bellsq::sharp_constant_tail(static_cast<int>(state.range(1)), std::nullopt,
                                                         policy_of(state)));
  }
}
BENCHMARK(BM_TailGrid)->ArgNames({"parallel", "grid"})->Args({0, 501})->Args({1, 501})->Unit(benchmark::kMillisecond);

void BM_Supersolution(benchmark::State& state) {
  bellsq::SuiteConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(1));
  cfg.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(bellsq::verify_exp_composite(0.5, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Supersolution)
    ->ArgNames({"parallel", "samples"})
    ->Args({0, 20000})
    ->Args({1, 20000})
    ->Unit(benchmark::kMillisecond);

void BM_BmoEstimate(benchmark::State& state) {
  bellsq::Rng rng(1);
  const bellsq::DistributionTable d = bellsq::rearrangement(bellsq::random_tree(rng, 1.0, 400));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bellsq::bmo_norm_estimate(d, static_cast<int>(state.range(1)), policy_of(state)));
  }
}
BENCHMARK(BM_BmoEstimate)->ArgNames({"parallel", "grid"})->Args({0, 2048})->Args({1, 2048})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
