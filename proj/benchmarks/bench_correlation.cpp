#include <benchmark/benchmark.h>

#include "xxent/correlation.hpp"

namespace {

xxent::SubsystemSpec two_intervals(std::int64_t m) {
  std::vector<std::int64_t> sites;
  for (std::int64_t s = 1; s <= m; ++s) sites.push_back(s);
  for (std::int64_t s = 2 * m + 1; s <= 3 * m; ++s) sites.push_back(s);
  return xxent::SubsystemSpec::parse(sites);
}

void BM_BuildBatched(benchmark::State& state) {
  const auto spec = two_intervals(state.range(0));
  const auto params = xxent::ModelParams::create(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        xxent::build_corr_matrix(spec, params, {.fill = xxent::FillStrategy::kBatched}));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildBatched)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMillisecond);

void BM_BuildDirect(benchmark::State& state) {
  const auto spec = two_intervals(state.range(0));
  const auto params = xxent::ModelParams::create(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        xxent::build_corr_matrix(spec, params, {.fill = xxent::FillStrategy::kDirect}));
  }
}
BENCHMARK(BM_BuildDirect)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

// Even m keeps the separator core regular at h = 0, odd m forces the
// eigendecomposition fallback.
void BM_BuildBatchedOdd(benchmark::State& state) {
  const auto spec = two_intervals(state.range(0) + 1);
  const auto params = xxent::ModelParams::create(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(xxent::build_corr_matrix(spec, params));
}
BENCHMARK(BM_BuildBatchedOdd)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMillisecond);

}  // namespace
