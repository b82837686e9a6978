#pragma once

#include <cstddef>
#include <cstdint>

#include "fractrend/raster.hpp"

namespace fractrend {

// Rasters with analytically known dimension, used to check the estimators.

// n x n Pascal-triangle-mod-2 pattern: (x, y) occupied iff (x & y) == 0.
// n must be a power of two; occupancy is 3^log2(n). Dimension ln 3 / ln 2.
BinaryRaster sierpinski_triangle(std::size_t n);

// 3^depth square carpet: occupied iff no base-3 digit position has both
// coordinate digits equal to 1. Occupancy 8^depth, dimension ln 8 / ln 3.
// depth in [1, 12].
BinaryRaster sierpinski_carpet(int depth);

BinaryRaster filled_rect(std::size_t w, std::size_t h);

// length x length canvas with row length / 2 fully occupied.
BinaryRaster line(std::size_t length);

// (2r + 1)^2 canvas; pixel occupied iff its center is within r of the middle pixel.
BinaryRaster disk(std::size_t radius);

// Each pixel independently occupied with probability p. Pixel i (row-major)
// is occupied iff to_unit(SplitMix64::at(seed, i)) < p.
BinaryRaster random_density(std::size_t w, std::size_t h, double p, std::uint64_t seed);

}  // namespace fractrend
