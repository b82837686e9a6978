#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fractrend/dimension.hpp"
#include "fractrend/raster.hpp"
#include "fractrend/regress.hpp"

namespace fractrend {

// Box side lengths in pixels, strictly decreasing, each >= 1, at least three.
class BoxSchedule {
 public:
  explicit BoxSchedule(std::vector<std::size_t> sizes);

  std::span<const std::size_t> sizes() const noexcept { return sizes_; }

 private:
  std::vector<std::size_t> sizes_;
};

// Powers of two from 2^floor(log2(min(w, h) / 2)) down to 1.
// Throws kInvalidArgument when min(w, h) < 8.
BoxSchedule default_schedule(const BinaryRaster& raster);

// N(size) for every size in the schedule, zeros included. Cells are anchored
// at (0, 0); partial cells along the right and bottom edges are counted.
std::vector<ScaleCount> count_boxes(const BinaryRaster& raster, const BoxSchedule& schedule);

// (ln size, ln N) for sizes with N > 0. Throws kDegenerate when the raster
// has no occupied pixel.
LogLogSeries box_counts(const BinaryRaster& raster, const BoxSchedule& schedule);

// dimension = -slope of the log-log fit. Needs at least three nonzero counts.
DimensionEstimate estimate_box_dimension(const BinaryRaster& raster, const BoxSchedule& schedule);

}  // namespace fractrend
