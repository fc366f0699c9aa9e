#include <benchmark/benchmark.h>

#include "dioprime/exppair.hpp"
#include "dioprime/ledger.hpp"

using namespace dioprime;

static void BM_ApplyLongChain(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(apply_word(ledger::constants::long_chain_word()));
}
BENCHMARK(BM_ApplyLongChain);

static void BM_SearchPairs(benchmark::State& state) {
  SearchOptions opts;
  opts.beam_width = 1024;
  opts.workers = static_cast<unsigned>(state.range(1));
  const int depth = static_cast<int>(state.range(0));
  auto objective = [](const ExponentPair& p) { return 1.1 * p.kappa.to_double() + p.lambda.to_double(); };
  for (auto _ : state) benchmark::DoNotOptimize(search_pairs(objective, depth, opts));
}
BENCHMARK(BM_SearchPairs)->ArgsProduct({{10, 20, 30}, {1, 8}})->Unit(benchmark::kMillisecond);

static void BM_BilinearReproduction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ledger::reproduce_bilinear_16th_terms());
}
BENCHMARK(BM_BilinearReproduction)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
