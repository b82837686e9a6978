#pragma once

#include <cstdint>
#include <vector>

#include "fractrend/regress.hpp"

namespace fractrend {

// One measurement: a box side or radius in pixels and the count observed at it.
struct ScaleCount {
  double scale = 0.0;
  std::uint64_t count = 0;

  friend bool operator==(const ScaleCount&, const ScaleCount&) = default;
};

// Slope-derived fractal dimension with the fit and the samples behind it.
// `counts` holds the raw measurements that produced `samples`, in the same order.
struct DimensionEstimate {
  double dimension = 0.0;
  LineFit fit;
  LogLogSeries samples;
  std::vector<ScaleCount> counts;
};

}  // namespace fractrend
