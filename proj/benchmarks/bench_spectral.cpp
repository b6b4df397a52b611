#include <benchmark/benchmark.h>

#include <random>

#include "xxent/spectral.hpp"

namespace {

xxent::Matrix random_symmetric(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  xxent::Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = dist(rng);
  return a;
}

void BM_EigTridiagonalQL(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(xxent::eig_symmetric(a, false, xxent::EigenMethod::kTridiagonalQL));
  }
}
BENCHMARK(BM_EigTridiagonalQL)->RangeMultiplier(2)->Range(16, 512)->Unit(benchmark::kMillisecond);

void BM_EigJacobi(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(xxent::eig_symmetric(a, false, xxent::EigenMethod::kJacobi));
  }
}
BENCHMARK(BM_EigJacobi)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_LuLogdet(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(xxent::lu_logdet(a));
}
BENCHMARK(BM_LuLogdet)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

}  // namespace
