#include <benchmark/benchmark.h>

#include "dioprime/count.hpp"

using namespace dioprime;

static void BM_CountFast(benchmark::State& state) {
  CountSpec s;
  s.Y = static_cast<std::uint64_t>(state.range(0));
  s.c = 1.5;
  s.gamma = 1.0;
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_tuples_fast(s, workers));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountFast)->ArgsProduct({{64, 128, 256, 512}, {1, 8}})->Unit(benchmark::kMillisecond);

static void BM_CountNaive(benchmark::State& state) {
  CountSpec s;
  s.Y = static_cast<std::uint64_t>(state.range(0));
  s.c = 1.5;
  s.gamma = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(count_tuples_naive(s));
}
BENCHMARK(BM_CountNaive)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_HarmonicV(benchmark::State& state) {
  CountSpec s;
  s.Y = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_V(s, 1.0, 8));
}
BENCHMARK(BM_HarmonicV)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
