// Serial reference vs OpenMP population evaluation and replicated testing.

#include <benchmark/benchmark.h>

#include "evothresh/experiments.hpp"

using namespace evothresh;

namespace {

std::vector<Individual> population(std::size_t n) {
  Rng rng(1);
  std::vector<Individual> pop(n);
  for (auto& ind : pop) ind.genome = random_thresholds(50, rng);
  return pop;
}

const EvalSpec& spec() {
  static const EvalSpec s = training_spec(GAConfig{}, Circle{});
  return s;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto base = population(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto pop = base;
    evaluate_population_serial(pop, spec(), 7, 1);
    benchmark::DoNotOptimize(pop.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateOpenMP(benchmark::State& state) {
  const auto base = population(static_cast<std::size_t>(state.range(0)));
  const Parallelism par{static_cast<int>(state.range(1))};
  for (auto _ : state) {
    auto pop = base;
    evaluate_population(pop, spec(), 7, 1, par);
    benchmark::DoNotOptimize(pop.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TestThresholds(benchmark::State& state) {
  Rng rng(2);
  const auto genome = random_thresholds(50, rng);
  TestSetup setup;
  setup.par.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(test_thresholds(genome, RandomWalk{}, setup).avg_pos_diff.mean);
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateOpenMP)->Args({100, 1})->Args({100, 2})->Args({100, 4})->Args({100, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TestThresholds)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
