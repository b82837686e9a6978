#include "fractrend/raster.hpp"

#include <algorithm>
#include <string>

#include "fractrend/error.hpp"

namespace fractrend {
namespace {

void check_extent(std::size_t width, std::size_t height, std::size_t actual, const char* what) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": width and height must be >= 1");
  }
  if (actual != width * height) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": expected " + std::to_string(width * height) +
                    " samples, got " + std::to_string(actual));
  }
}

void check_rect(std::size_t width, std::size_t height, const Rect& r) {
  if (r.w == 0 || r.h == 0 || r.x0 > width || r.y0 > height || r.w > width - r.x0 ||
      r.h > height - r.y0) {
    throw Error(ErrorCode::kOutOfBounds,
                "crop rect {" + std::to_string(r.x0) + "," + std::to_string(r.y0) + "," +
                    std::to_string(r.w) + "," + std::to_string(r.h) + "} exceeds " +
                    std::to_string(width) + "x" + std::to_string(height) + " raster");
  }
}

template <typename T>
std::vector<T> crop_rows(std::span<const T> src, std::size_t width, const Rect& r) {
  std::vector<T> out;
  out.reserve(r.w * r.h);
  for (std::size_t y = r.y0; y < r.y0 + r.h; ++y) {
    auto row = src.subspan(y * width + r.x0, r.w);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace

GrayRaster::GrayRaster(std::size_t width, std::size_t height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_extent(width_, height_, samples_.size(), "GrayRaster");
}

BinaryRaster::BinaryRaster(std::size_t width, std::size_t height,
                           std::vector<std::uint8_t> occupied)
    : width_(width), height_(height), occupied_(std::move(occupied)) {
  if (occupied_.size() != width_ * height_) {
    throw Error(ErrorCode::kInvalidArgument,
                "BinaryRaster: expected " + std::to_string(width_ * height_) + " cells, got " +
                    std::to_string(occupied_.size()));
  }
  for (auto& c : occupied_) c = c != 0 ? 1 : 0;
}

BinaryRaster BinaryRaster::empty(std::size_t width, std::size_t height) {
  return BinaryRaster(width, height, std::vector<std::uint8_t>(width * height, 0));
}

BinaryRaster binarize(const GrayRaster& gray, int threshold, Polarity polarity) {
  if (threshold < 0 || threshold > 255) {
    throw Error(ErrorCode::kInvalidArgument,
                "threshold " + std::to_string(threshold) + " outside [0, 255]");
  }
  std::vector<std::uint8_t> cells(gray.samples().size());
  const bool light = polarity == Polarity::kLightIsOccupied;
  std::transform(gray.samples().begin(), gray.samples().end(), cells.begin(),
                 [&](std::uint8_t v) -> std::uint8_t {
                   return light ? (v >= threshold) : (v < threshold);
                 });
  return BinaryRaster(gray.width(), gray.height(), std::move(cells));
}

GrayRaster to_gray(const BinaryRaster& binary, Polarity polarity) {
  const std::uint8_t on = polarity == Polarity::kLightIsOccupied ? 255 : 0;
  std::vector<std::uint8_t> samples(binary.cells().size());
  std::transform(binary.cells().begin(), binary.cells().end(), samples.begin(),
                 [on](std::uint8_t c) -> std::uint8_t { return c ? on : 255 - on; });
  return GrayRaster(binary.width(), binary.height(), std::move(samples));
}

BinaryRaster crop(const BinaryRaster& binary, const Rect& rect) {
  check_rect(binary.width(), binary.height(), rect);
  return BinaryRaster(rect.w, rect.h, crop_rows(binary.cells(), binary.width(), rect));
}

GrayRaster crop(const GrayRaster& gray, const Rect& rect) {
  check_rect(gray.width(), gray.height(), rect);
  return GrayRaster(rect.w, rect.h, crop_rows(gray.samples(), gray.width(), rect));
}

BinaryRaster embed(const BinaryRaster& src, std::size_t canvas_width,
                   std::size_t canvas_height, std::size_t x0, std::size_t y0) {
  check_rect(canvas_width, canvas_height, Rect{x0, y0, src.width(), src.height()});
  std::vector<std::uint8_t> cells(canvas_width * canvas_height, 0);
  for (std::size_t y = 0; y < src.height(); ++y) {
    auto row = src.cells().subspan(y * src.width(), src.width());
    std::copy(row.begin(), row.end(), cells.begin() + (y0 + y) * canvas_width + x0);
  }
  return BinaryRaster(canvas_width, canvas_height, std::move(cells));
}

std::size_t occupancy_count(const BinaryRaster& binary) {
  return static_cast<std::size_t>(
      std::count(binary.cells().begin(), binary.cells().end(), std::uint8_t{1}));
}

}  // namespace fractrend
