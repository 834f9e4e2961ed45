#include <benchmark/benchmark.h>

#include <random>

#include "klucas/algebraic.hpp"
#include "klucas/contfrac.hpp"
#include "klucas/lattice.hpp"
#include "klucas/reduction.hpp"
#include "klucas/search.hpp"
#include "klucas/seq.hpp"

using namespace klucas;

static void BM_LucasWindow(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(lucas_window(k, 1300));
}
BENCHMARK(BM_LucasWindow)->Arg(2)->Arg(10)->Arg(800);

static void BM_DominantContext(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(build_context(k, 256));
}
BENCHMARK(BM_DominantContext)->Arg(3)->Arg(12)->Arg(40);

static void BM_LllReduce(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  std::vector<IntVector> cols(dim, IntVector(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (auto& e : cols[i]) e = d(rng);
    cols[i][i] += 10000000;
  }
  const LatticeBasis b = LatticeBasis::from_columns(cols);
  for (auto _ : state) benchmark::DoNotOptimize(lll_reduce(b));
}
BENCHMARK(BM_LllReduce)->Arg(3)->Arg(5)->Arg(8);

static void BM_CfExpand(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cf_expand(log3_over_log2(1024), 188));
}
BENCHMARK(BM_CfExpand);

static void BM_DeskSearch(benchmark::State& state) {
  SearchConfig cfg = preset("desk");
  cfg.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(cfg));
}
BENCHMARK(BM_DeskSearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_FirstFormReduction(benchmark::State& state) {
  ReductionSpec spec;
  spec.form = ReductionForm::L1;
  spec.k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_reduction(spec));
}
BENCHMARK(BM_FirstFormReduction)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
