#include <benchmark/benchmark.h>

#include "padicsr/analyzer.hpp"
#include "padicsr/metacyclic.hpp"

using namespace psr;

static void BM_TowerNorm(benchmark::State& state) {
  auto t = Tower::adjoin(Tower::base(3), "s3", 2, Tower::base(3)->rational(-3));
  t = Tower::adjoin(t, "r", 3, t->rational(Rat(972)));
  TowerElement x(t, {Rat(1), Rat(2), Rat(-1), Rat(3), Rat(1, 2), Rat(5)});
  for (auto _ : state) benchmark::DoNotOptimize(x.norm());
}
BENCHMARK(BM_TowerNorm);

static void BM_CertifyTail(benchmark::State& state) {
  const long p = state.range(0), n = state.range(1);
  auto spec = branch_signature(p, n, 1, p == 2 ? 2 : p);
  for (auto _ : state) benchmark::DoNotOptimize(certify_tail(spec));
}
BENCHMARK(BM_CertifyTail)->Args({2, 3})->Args({3, 2})->Args({3, 3})->Args({5, 3})->Args({13, 3});

static void BM_Analyze(benchmark::State& state) {
  const long p = state.range(0), n = state.range(1);
  auto spec = branch_signature(p, n, 1, p == 2 ? 2 : p);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(spec));
}
BENCHMARK(BM_Analyze)->Args({2, 3})->Args({3, 3})->Args({7, 4});

static void BM_HerbrandConvert(benchmark::State& state) {
  auto f = cyclotomic_filtration(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(herbrand_convert(f, Numbering::Lower));
}
BENCHMARK(BM_HerbrandConvert)->Args({5, 4})->Args({13, 6});

static void BM_SignatureSolver(benchmark::State& state) {
  MetacyclicSpec spec{13, 2, 12, {1, 5, 6}};
  for (auto _ : state) benchmark::DoNotOptimize(signature_solver(spec));
}
BENCHMARK(BM_SignatureSolver);

BENCHMARK_MAIN();
