#include <benchmark/benchmark.h>

#include <cmath>

#include "fractrend/curvature.hpp"
#include "fractrend/trend.hpp"

using namespace fractrend;

namespace {

DimensionSeries difference_data() {
  const DifferenceModelParams p{0.003, -4.5, 660, 1.8, 1.8e8};
  std::vector<DimensionSample> s;
  for (int t = 2000; t <= 2020; ++t) s.push_back({double(t), eval_difference_model(p, t)});
  return DimensionSeries(s);
}

DimensionSeries logistic_data() {
  const LogisticParams p{0.699952, 2.07022e40, 0.049432, 1.0};
  std::vector<DimensionSample> s;
  for (double t : {1900, 1915, 1924, 1935, 1956, 1986, 2006, 2013}) s.push_back({t, eval_logistic(p, t)});
  return DimensionSeries(s);
}

}  // namespace

static void BM_FitDifference(benchmark::State& state) {
  const auto series = difference_data();
  MultiStartConfig cfg;
  cfg.starts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_difference_model(series, cfg));
}
BENCHMARK(BM_FitDifference)->Arg(4)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_FitLogistic(benchmark::State& state) {
  const auto series = logistic_data();
  for (auto _ : state) benchmark::DoNotOptimize(fit_logistic(series, 1.0));
}
BENCHMARK(BM_FitLogistic)->Unit(benchmark::kMillisecond);

static void BM_AverageCurvature(benchmark::State& state) {
  const Segment seg{SegmentKind::kExponential, 1780, 1870, 3e-21, 1.0324};
  const int panels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(average_curvature(seg, panels));
}
BENCHMARK(BM_AverageCurvature)->RangeMultiplier(4)->Range(64, 16384);

BENCHMARK_MAIN();
