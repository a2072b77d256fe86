// Serial reference path against the OpenMP path for the parallel kernels.

#include <benchmark/benchmark.h>

#include "kout/expansion.hpp"
#include "kout/experiments.hpp"
#include "kout/matching.hpp"
#include "kout/models.hpp"

using namespace kout;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::kParallel : Execution::kSerial;
}

void BM_SampleKOut(benchmark::State& state) {
  const HostModel host{HostKind::kComplete, 400, 3};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_kout(host, 4, seed++, mode(state)));
}
BENCHMARK(BM_SampleKOut)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Prop3(benchmark::State& state) {
  const auto h = sample_kout({HostKind::kComplete, 14, 3}, 3, 1).hypergraph;
  for (auto _ : state) benchmark::DoNotOptimize(check_prop3_hypothesis(h, false, {}, mode(state)));
}
BENCHMARK(BM_Prop3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Prop6(benchmark::State& state) {
  const auto h = sample_kout({HostKind::kPartite, 8, 3}, 6, 2).hypergraph;
  const PartiteExpansionParams params{0.3, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(check_prop6_hypothesis(h, params, {}, mode(state)));
}
BENCHMARK(BM_Prop6)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CoverShape(benchmark::State& state) {
  const auto h = sample_kout({HostKind::kComplete, 18, 3}, 2, 3).hypergraph;
  for (auto _ : state) benchmark::DoNotOptimize(cover_shape(h, SolveMode::kExact, mode(state)));
}
BENCHMARK(BM_CoverShape)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_KOutTrials(benchmark::State& state) {
  ExperimentConfig config;
  config.n = 30;
  config.r = 3;
  config.k_min = config.k_max = 2;
  config.trials = 16;
  config.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(experiment_kout_pfm(config));
}
BENCHMARK(BM_KOutTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
