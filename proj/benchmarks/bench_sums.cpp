#include <benchmark/benchmark.h>

#include <cmath>

#include "dioprime/solver.hpp"
#include "dioprime/sums.hpp"

using namespace dioprime;

static void BM_PhaseSumS(benchmark::State& state) {
  const double X = static_cast<double>(state.range(0));
  const ProblemInstance inst = make_instance(2.05, X);
  const PrimeTable P = sieve_primes(X);
  const PhaseSum S = make_S(inst, P);
  for (auto _ : state) benchmark::DoNotOptimize(S(inst.tau, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(S.size()));
}
BENCHMARK(BM_PhaseSumS)->Arg(4096)->Arg(65536)->Arg(1 << 20);

static void BM_IntegralI(benchmark::State& state) {
  const ProblemInstance inst = make_instance(2.05, 4096);
  const double x = static_cast<double>(state.range(0)) * std::pow(inst.X, -inst.c);
  for (auto _ : state) benchmark::DoNotOptimize(integral_I(inst, x));
}
BENCHMARK(BM_IntegralI)->Arg(1)->Arg(4)->Arg(64)->Arg(4096);

static void BM_Moment4S(benchmark::State& state) {
  const ProblemInstance inst = make_instance(2.05, 256);
  const PrimeTable P = sieve_primes(inst.X);
  for (auto _ : state) benchmark::DoNotOptimize(moment4(inst, MomentOf::S, &P, 8));
}
BENCHMARK(BM_Moment4S)->Unit(benchmark::kMillisecond);

static void BM_TripleCount(benchmark::State& state) {
  const double N = 1e5;
  const ProblemInstance inst = instance_for_theorem1(N, 1.5);
  const TripleSolver solver(inst, sieve_primes(inst.X));
  double R = 1.5 * N;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.count_B(R));
    R += 0.37;
  }
}
BENCHMARK(BM_TripleCount);

BENCHMARK_MAIN();
