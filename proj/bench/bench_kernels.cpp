// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick
// one; the jobs argument is the second range value.

#include <benchmark/benchmark.h>

#include <vector>

#include "namefit/binning.hpp"
#include "namefit/inference.hpp"
#include "namefit/intervals.hpp"
#include "test_support.hpp"

using namespace namefit;

namespace {

const std::vector<std::int64_t> kDice{5, 8, 9, 8, 10, 20};
const std::vector<double> kFair(6, 1.0 / 6.0);

void BM_MonteCarloSerial(benchmark::State& state) {
  const RandomSource rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_p_value_serial(kDice, kFair, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const RandomSource rng(1);
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_p_value(kDice, kFair, state.range(0), rng, jobs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct BootstrapSetup {
  FrequencyDistribution reference = oracle::synthetic_reference();
  BinSpec spec = compute_bins(profile(reference), 6);
};

const BootstrapSetup& setup() {
  static const BootstrapSetup s;
  return s;
}

void BM_BootstrapSerial(benchmark::State& state) {
  const auto& s = setup();
  BootstrapOptions opt;
  opt.replicates = static_cast<std::size_t>(state.range(0));
  const RandomSource rng(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(bootstrap_uniform_replicates_serial(s.reference, s.spec, opt, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BootstrapParallel(benchmark::State& state) {
  const auto& s = setup();
  BootstrapOptions opt;
  opt.replicates = static_cast<std::size_t>(state.range(0));
  opt.jobs = static_cast<int>(state.range(1));
  const RandomSource rng(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(bootstrap_uniform_replicates(s.reference, s.spec, opt, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ComputeBins(benchmark::State& state) {
  const auto p = profile(setup().reference);
  for (auto _ : state) benchmark::DoNotOptimize(compute_bins(p, static_cast<std::size_t>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapParallel)->Args({10000, 1})->Args({10000, 2})->Args({10000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeBins)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
