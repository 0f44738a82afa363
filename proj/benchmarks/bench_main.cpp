#include <benchmark/benchmark.h>

#include "quill/illumination.hpp"
#include "quill/montecarlo.hpp"
#include "quill/photon_stats.hpp"
#include "quill/rng.hpp"
#include "quill/samplers.hpp"

using namespace quill;

namespace {

Scenario pixel(SourceKind kind, std::int64_t m, double n, std::int64_t m_beta, double n_beta) {
  Scenario s;
  s.source_kind = kind;
  s.M = m;
  s.N = n;
  s.M_beta = m_beta;
  s.N_beta = n_beta;
  s.eta = 0.38;
  s.eta_beta = 0.5;
  return s;
}

// args: M, M_beta
void BM_CountSampler(benchmark::State& state, SourceKind kind) {
  const auto m = state.range(0);
  const auto s = pixel(kind, m, 0.038 * static_cast<double>(m), state.range(1), 100.0);
  const sampling::CountSampler sampler(s);
  Philox4x32 rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_CountSampler, twb, SourceKind::twb)
    ->Args({1, 1})->Args({500, 20})->Args({90000, 50})->Args({90000, 1300});
BENCHMARK_CAPTURE(BM_CountSampler, thb, SourceKind::thb)
    ->Args({1, 1})->Args({500, 20})->Args({90000, 50})->Args({90000, 1300});

void BM_Quadratures(benchmark::State& state) {
  const auto s = pixel(SourceKind::twb, 90000, 4000, 50, 1e4);
  Philox4x32 rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampling::sample_effective_quadratures(s, rng));
}
BENCHMARK(BM_Quadratures);

void BM_Philox(benchmark::State& state) {
  Philox4x32 rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_Philox);

void BM_AnalyticSnr(benchmark::State& state) {
  const auto twb = pixel(SourceKind::twb, 90000, 4232, 1300, 1e6);
  const auto thb = pixel(SourceKind::thb, 90000, 3278, 1300, 1e6);
  for (auto _ : state) benchmark::DoNotOptimize(photon_stats::snr_ratio(twb, thb));
}
BENCHMARK(BM_AnalyticSnr);

void BM_MutualInfo(benchmark::State& state) {
  const auto twb = pixel(SourceKind::twb, 90000, 4232, 1300, 1e6);
  const auto thb = pixel(SourceKind::thb, 90000, 3278, 1300, 1e6);
  for (auto _ : state) benchmark::DoNotOptimize(illumination::mi_ratio(twb, thb));
}
BENCHMARK(BM_MutualInfo);

void BM_RunCounting(benchmark::State& state) {
  const auto s = pixel(SourceKind::twb, 20, 0.76, 5, 5);
  mc::MCConfig cfg;
  cfg.shots = static_cast<std::uint64_t>(state.range(0));
  cfg.pixels = 1;
  cfg.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mc::run_counting(s, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunCounting)->Args({100000, 1})->Args({100000, 0})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
