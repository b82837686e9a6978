#include "fractrend/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fractrend/error.hpp"

namespace fractrend {
namespace {

std::uint64_t count_occupied_cells(const BinaryRaster& raster, std::size_t size) {
  const std::size_t w = raster.width();
  const std::size_t h = raster.height();
  const std::size_t cols = (w + size - 1) / size;
  std::vector<std::uint8_t> band(cols);
  std::uint64_t total = 0;
  for (std::size_t y0 = 0; y0 < h; y0 += size) {
    std::fill(band.begin(), band.end(), std::uint8_t{0});
    const std::size_t y1 = std::min(h, y0 + size);
    for (std::size_t y = y0; y < y1; ++y) {
      const auto row = raster.cells().subspan(y * w, w);
      for (std::size_t x = 0; x < w; ++x) band[x / size] |= row[x];
    }
    total += static_cast<std::uint64_t>(std::count(band.begin(), band.end(), std::uint8_t{1}));
  }
  return total;
}

std::vector<Point> log_points(std::span<const ScaleCount> counts) {
  std::vector<Point> pts;
  for (const auto& c : counts) {
    if (c.count > 0) pts.push_back({std::log(c.scale), std::log(static_cast<double>(c.count))});
  }
  return pts;
}

std::vector<ScaleCount> nonzero(std::vector<ScaleCount> counts) {
  std::erase_if(counts, [](const ScaleCount& c) { return c.count == 0; });
  return counts;
}

}  // namespace

BoxSchedule::BoxSchedule(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "box schedule needs at least 3 sizes, got " + std::to_string(sizes_.size()));
  }
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 1) throw Error(ErrorCode::kInvalidArgument, "box size must be >= 1");
    if (i > 0 && sizes_[i] >= sizes_[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "box sizes must be strictly decreasing");
    }
  }
}

BoxSchedule default_schedule(const BinaryRaster& raster) {
  const std::size_t side = std::min(raster.width(), raster.height());
  if (side < 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "raster " + std::to_string(raster.width()) + "x" +
                    std::to_string(raster.height()) + " too small for a box schedule (min side 8)");
  }
  std::size_t top = 1;
  while (top * 2 <= side / 2) top *= 2;
  std::vector<std::size_t> sizes;
  for (std::size_t s = top; s >= 1; s /= 2) sizes.push_back(s);
  return BoxSchedule(std::move(sizes));
}

std::vector<ScaleCount> count_boxes(const BinaryRaster& raster, const BoxSchedule& schedule) {
  std::vector<ScaleCount> out;
  out.reserve(schedule.sizes().size());
  for (const std::size_t size : schedule.sizes()) {
    out.push_back({static_cast<double>(size), count_occupied_cells(raster, size)});
  }
  return out;
}

LogLogSeries box_counts(const BinaryRaster& raster, const BoxSchedule& schedule) {
  auto pts = log_points(count_boxes(raster, schedule));
  if (pts.empty()) throw Error(ErrorCode::kDegenerate, "raster has no occupied pixels");
  return LogLogSeries(std::move(pts));
}

DimensionEstimate estimate_box_dimension(const BinaryRaster& raster, const BoxSchedule& schedule) {
  auto counts = nonzero(count_boxes(raster, schedule));
  if (counts.empty()) throw Error(ErrorCode::kDegenerate, "raster has no occupied pixels");
  if (counts.size() < 3) {
    throw Error(ErrorCode::kTooFewSamples, "box counting produced " +
                                               std::to_string(counts.size()) +
                                               " nonzero sizes; need at least 3");
  }
  LogLogSeries series(log_points(counts));
  const LineFit fit = ols_fit(series);
  return DimensionEstimate{std::abs(fit.slope), fit, std::move(series), std::move(counts)};
}

}  // namespace fractrend
