#include <benchmark/benchmark.h>

#include "xxent/contour.hpp"

namespace {

void BM_EntropyByContour(benchmark::State& state) {
  std::vector<std::int64_t> sites;
  for (std::int64_t s = 1; s <= state.range(0); ++s) sites.push_back(2 * s);
  const auto a = xxent::build_corr_matrix(xxent::SubsystemSpec::parse(sites),
                                          xxent::ModelParams::create(0.3));
  const auto contour = xxent::ContourSpec::rectangle(1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(xxent::entropy_by_contour(a, contour));
}
BENCHMARK(BM_EntropyByContour)->DenseRange(2, 12, 5)->Unit(benchmark::kMillisecond);

}  // namespace
