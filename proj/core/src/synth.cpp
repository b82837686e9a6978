#include "fractrend/synth.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "fractrend/error.hpp"
#include "fractrend/random.hpp"

namespace fractrend {
namespace {

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive");
}

}  // namespace

BinaryRaster sierpinski_triangle(std::size_t n) {
  if (!std::has_single_bit(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "triangle side " + std::to_string(n) + " is not a power of two");
  }
  std::vector<std::uint8_t> cells(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) cells[y * n + x] = (x & y) == 0;
  }
  return BinaryRaster(n, n, std::move(cells));
}

BinaryRaster sierpinski_carpet(int depth) {
  if (depth < 1 || depth > 12) {
    throw Error(ErrorCode::kInvalidArgument,
                "carpet depth " + std::to_string(depth) + " outside [1, 12]");
  }
  std::size_t n = 1;
  for (int i = 0; i < depth; ++i) n *= 3;
  std::vector<std::uint8_t> cells(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      bool hole = false;
      for (std::size_t a = x, b = y; a > 0 || b > 0; a /= 3, b /= 3) {
        if (a % 3 == 1 && b % 3 == 1) {
          hole = true;
          break;
        }
      }
      cells[y * n + x] = !hole;
    }
  }
  return BinaryRaster(n, n, std::move(cells));
}

BinaryRaster filled_rect(std::size_t w, std::size_t h) {
  require_positive(w, "width");
  require_positive(h, "height");
  return BinaryRaster(w, h, std::vector<std::uint8_t>(w * h, 1));
}

BinaryRaster line(std::size_t length) {
  require_positive(length, "line length");
  std::vector<std::uint8_t> cells(length * length, 0);
  const std::size_t row = length / 2;
  std::fill_n(cells.begin() + static_cast<std::ptrdiff_t>(row * length), length, std::uint8_t{1});
  return BinaryRaster(length, length, std::move(cells));
}

BinaryRaster disk(std::size_t radius) {
  require_positive(radius, "disk radius");
  const std::size_t n = 2 * radius + 1;
  const auto r = static_cast<double>(radius);
  std::vector<std::uint8_t> cells(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      const double dx = static_cast<double>(x) - r;
      const double dy = static_cast<double>(y) - r;
      cells[y * n + x] = dx * dx + dy * dy <= r * r;
    }
  }
  return BinaryRaster(n, n, std::move(cells));
}

BinaryRaster random_density(std::size_t w, std::size_t h, double p, std::uint64_t seed) {
  require_positive(w, "width");
  require_positive(h, "height");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "density must lie in [0, 1]");
  }
  std::vector<std::uint8_t> cells(w * h);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = SplitMix64::to_unit(SplitMix64::at(seed, i)) < p;
  }
  return BinaryRaster(w, h, std::move(cells));
}

}  // namespace fractrend
