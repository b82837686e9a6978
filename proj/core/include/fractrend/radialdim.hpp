#pragma once

#include <span>
#include <vector>

#include "fractrend/dimension.hpp"
#include "fractrend/raster.hpp"
#include "fractrend/regress.hpp"

namespace fractrend {

// Pixel-center coordinates: pixel (x, y) occupies [x - 0.5, x + 0.5].
struct Center {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Center&, const Center&) = default;
};

enum class CenterMode { kGeometric, kMassCentroid };

// kGeometric: ((w - 1) / 2, (h - 1) / 2). kMassCentroid: mean of the occupied
// pixel coordinates; throws kDegenerate on an empty raster.
Center counting_center(const BinaryRaster& raster, CenterMode mode);

// Distance from `center` to the nearest raster edge. A disk larger than this
// spills outside the image and counts background as if it were empty, which
// biases the slope downward on cropped imagery.
// Throws kOutOfBounds unless 0 <= x <= w - 1 and 0 <= y <= h - 1.
double max_valid_radius(const BinaryRaster& raster, Center center);

// Strictly increasing positive radii about a fixed center. Construction
// rejects any radius beyond max_valid_radius; nothing is clamped.
class RadialSchedule {
 public:
  RadialSchedule(const BinaryRaster& raster, Center center, std::vector<double> radii);

  Center center() const noexcept { return center_; }
  std::span<const double> radii() const noexcept { return radii_; }

 private:
  Center center_;
  std::vector<double> radii_;
};

// Radii 4 * sqrt(2)^k for k = 0, 1, ... up to max_valid_radius. Throws
// kInvalidArgument if fewer than six radii fit.
RadialSchedule default_radial_schedule(const BinaryRaster& raster, Center center);

// N(R) = occupied pixels whose center lies within distance R (inclusive), zeros kept.
std::vector<ScaleCount> count_within_radii(const BinaryRaster& raster,
                                           const RadialSchedule& schedule);

// (ln R, ln N(R)) for radii with N > 0. Throws kDegenerate if every N is 0.
LogLogSeries radial_counts(const BinaryRaster& raster, const RadialSchedule& schedule);

// dimension = slope of the log-log fit. Needs at least three nonzero counts.
DimensionEstimate estimate_radial_dimension(const BinaryRaster& raster,
                                            const RadialSchedule& schedule);

}  // namespace fractrend
