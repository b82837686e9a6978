#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fractrend {

// 8-bit grayscale image, row-major, origin at the top-left pixel.
class GrayRaster {
 public:
  // Throws kInvalidArgument unless samples.size() == width * height and both
  // extents are at least one.
  GrayRaster(std::size_t width, std::size_t height, std::vector<std::uint8_t> samples);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  std::uint8_t at(std::size_t x, std::size_t y) const noexcept { return samples_[y * width_ + x]; }

  friend bool operator==(const GrayRaster&, const GrayRaster&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> samples_;
};

// Occupancy grid. An occupied pixel is a built-up ("white") pixel.
class BinaryRaster {
 public:
  // Throws kInvalidArgument when occupied.size() != width * height. Any
  // nonzero byte counts as occupied; storage is normalized to 0/1.
  BinaryRaster(std::size_t width, std::size_t height, std::vector<std::uint8_t> occupied);

  // All-empty raster of the given extent.
  static BinaryRaster empty(std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const std::uint8_t> cells() const noexcept { return occupied_; }
  bool at(std::size_t x, std::size_t y) const noexcept { return occupied_[y * width_ + x] != 0; }

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> occupied_;
};

struct Rect {
  std::size_t x0 = 0;
  std::size_t y0 = 0;
  std::size_t w = 0;
  std::size_t h = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Polarity { kLightIsOccupied, kDarkIsOccupied };

// light: occupied iff intensity >= threshold. dark: occupied iff intensity < threshold.
// threshold must lie in [0, 255].
BinaryRaster binarize(const GrayRaster& gray, int threshold, Polarity polarity);

// Inverse mapping onto {0, 255}: occupied pixels become 255 under
// kLightIsOccupied and 0 under kDarkIsOccupied, so that binarizing the result
// with the original threshold and polarity reproduces `binary`.
GrayRaster to_gray(const BinaryRaster& binary, Polarity polarity = Polarity::kLightIsOccupied);

// Throws kOutOfBounds unless the rect is nonempty and lies within the raster.
BinaryRaster crop(const BinaryRaster& binary, const Rect& rect);
GrayRaster crop(const GrayRaster& gray, const Rect& rect);

// Copies `src` onto an empty canvas with its top-left corner at (x0, y0).
// Throws kOutOfBounds if it does not fit.
BinaryRaster embed(const BinaryRaster& src, std::size_t canvas_width,
                   std::size_t canvas_height, std::size_t x0, std::size_t y0);

std::size_t occupancy_count(const BinaryRaster& binary);

}  // namespace fractrend
