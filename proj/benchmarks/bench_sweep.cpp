#include <benchmark/benchmark.h>

#include "experiments/sweep.hpp"

using namespace quill::experiments;

namespace {

void BM_Figure3Sweep(benchmark::State& state) {
  auto spec = figure3_spec();
  spec.grid.count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Figure3Sweep)->Arg(60)->Arg(1000);

} // namespace
