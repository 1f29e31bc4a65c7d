#include <benchmark/benchmark.h>

#include "sgf/ensembles.hpp"

using namespace sgf;

namespace {

void run(benchmark::State& state, bool parallel) {
  int N = int(state.range(0));
  EnsembleSpec ens = gue_ensemble(N);
  SourceKappa k = make_kappa({{0.3, -0.5}, {-0.4, -0.5}}, {-0.2, 0.5});
  const int64_t n = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(mc_generating_function(ens, k, n, 1, parallel));
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_mc_serial(benchmark::State& s) { run(s, false); }
void BM_mc_parallel(benchmark::State& s) { run(s, true); }

void BM_hciz(benchmark::State& state) {
  bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(mc_hciz({1, -0.5, 2}, {0.5, -0.3, 0.8}, 50000, 2, parallel));
}

}  // namespace

BENCHMARK(BM_mc_serial)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_parallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hciz)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
