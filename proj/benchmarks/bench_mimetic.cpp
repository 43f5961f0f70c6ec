#include <benchmark/benchmark.h>

#include "mimdet/mimdet.hpp"

using namespace mimdet;

namespace {

void BM_BuildGrad2D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_operators(k, n, n));
}
BENCHMARK(BM_BuildGrad2D)->ArgsProduct({{2, 8}, {64, 128, 256}})->Unit(benchmark::kMicrosecond);

void BM_ApplyGrad2D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto ops = build_operators(k, n, n);
  const auto u = pad_and_vectorize(synthetic_scene(n, n));
  for (auto _ : state) benchmark::DoNotOptimize(apply(ops->gradient, u));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ops->gradient.matrix().nnz()));
}
BENCHMARK(BM_ApplyGrad2D)->ArgsProduct({{2, 4, 6, 8}, {64, 128, 256, 512}})->Unit(benchmark::kMicrosecond);

void BM_StatisticCached(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  OperatorCache cache;
  const auto img = synthetic_scene(n, n);
  cache.get(k, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(statistic_t(img, k, cache));
}
BENCHMARK(BM_StatisticCached)->ArgsProduct({{2, 8}, {128, 512}})->Unit(benchmark::kMicrosecond);

void BM_StatisticBatch(benchmark::State& state) {
  std::vector<Image> images;
  for (std::uint64_t s = 0; s < 64; ++s) images.push_back(smooth_random_image(128, 128, s));
  OperatorCache cache;
  cache.get(4, 128, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(statistic_batch(images, 4, cache, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_StatisticBatch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ReproduceTable(benchmark::State& state) {
  const auto img = synthetic_scene(128, 128);
  for (auto _ : state) {
    OperatorCache cache;
    benchmark::DoNotOptimize(reproduce_table1(img, kCanonicalEpsilon, kDefaultSeeds, cache));
  }
}
BENCHMARK(BM_ReproduceTable)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
