#include <benchmark/benchmark.h>

#include "fractrend/boxdim.hpp"
#include "fractrend/radialdim.hpp"
#include "fractrend/synth.hpp"

using namespace fractrend;

static void BM_BoxCount(benchmark::State& state) {
  const auto b = sierpinski_triangle(static_cast<std::size_t>(state.range(0)));
  const auto sched = default_schedule(b);
  for (auto _ : state) benchmark::DoNotOptimize(count_boxes(b, sched));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_BoxCount)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);

static void BM_BoxDimensionRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = random_density(n, n, 0.3, 7);
  const auto sched = default_schedule(b);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_box_dimension(b, sched));
}
BENCHMARK(BM_BoxDimensionRandom)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_RadialCount(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = random_density(n, n, 0.3, 11);
  const auto sched = default_radial_schedule(b, counting_center(b, CenterMode::kGeometric));
  for (auto _ : state) benchmark::DoNotOptimize(count_within_radii(b, sched));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RadialCount)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

static void BM_SynthCarpet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sierpinski_carpet(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SynthCarpet)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
