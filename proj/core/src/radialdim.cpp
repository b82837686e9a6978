#include "fractrend/radialdim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fractrend/error.hpp"

namespace fractrend {
namespace {

// Absorbs rounding in radii computed as powers of sqrt(2).
constexpr double kRadiusSlack = 1e-9;

std::string describe(Center c) {
  std::ostringstream os;
  os << "(" << c.x << ", " << c.y << ")";
  return os.str();
}

}  // namespace

Center counting_center(const BinaryRaster& raster, CenterMode mode) {
  if (mode == CenterMode::kGeometric) {
    return {(static_cast<double>(raster.width()) - 1.0) / 2.0,
            (static_cast<double>(raster.height()) - 1.0) / 2.0};
  }
  double sx = 0.0;
  double sy = 0.0;
  std::size_t n = 0;
  for (std::size_t y = 0; y < raster.height(); ++y) {
    for (std::size_t x = 0; x < raster.width(); ++x) {
      if (raster.at(x, y)) {
        sx += static_cast<double>(x);
        sy += static_cast<double>(y);
        ++n;
      }
    }
  }
  if (n == 0) throw Error(ErrorCode::kDegenerate, "mass centroid of an empty raster");
  return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

double max_valid_radius(const BinaryRaster& raster, Center center) {
  const double w = static_cast<double>(raster.width());
  const double h = static_cast<double>(raster.height());
  if (!(center.x >= 0.0 && center.x <= w - 1.0 && center.y >= 0.0 && center.y <= h - 1.0)) {
    throw Error(ErrorCode::kOutOfBounds, "counting center " + describe(center) +
                                             " outside raster");
  }
  return std::min({center.x + 0.5, center.y + 0.5, w - 0.5 - center.x, h - 0.5 - center.y});
}

RadialSchedule::RadialSchedule(const BinaryRaster& raster, Center center,
                               std::vector<double> radii)
    : center_(center), radii_(std::move(radii)) {
  if (radii_.empty()) throw Error(ErrorCode::kInvalidArgument, "radial schedule is empty");
  const double limit = max_valid_radius(raster, center_);
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) {
      throw Error(ErrorCode::kInvalidArgument, "radii must be positive and finite");
    }
    if (i > 0 && radii_[i] <= radii_[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "radii must be strictly increasing");
    }
  }
  if (radii_.back() > limit + kRadiusSlack) {
    std::ostringstream os;
    os << "radius " << radii_.back() << " exceeds max valid radius " << limit << " about "
       << describe(center_);
    throw Error(ErrorCode::kOutOfBounds, os.str());
  }
}

RadialSchedule default_radial_schedule(const BinaryRaster& raster, Center center) {
  const double limit = max_valid_radius(raster, center);
  std::vector<double> radii;
  for (int k = 0;; ++k) {
    const double r = 4.0 * std::pow(2.0, k / 2.0);
    if (r > limit + kRadiusSlack) break;
    radii.push_back(r);
  }
  if (radii.size() < 6) {
    std::ostringstream os;
    os << "max valid radius " << limit << " admits only " << radii.size()
       << " default radii; need at least 6";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  return RadialSchedule(raster, center, std::move(radii));
}

std::vector<ScaleCount> count_within_radii(const BinaryRaster& raster,
                                           const RadialSchedule& schedule) {
  const Center c = schedule.center();
  const double rmax = schedule.radii().back();
  const double rmax2 = rmax * rmax;

  // Only pixels inside the bounding square of the largest disk can count.
  const auto lo = [](double v) {
    return static_cast<std::size_t>(std::max(0.0, std::floor(v)));
  };
  const std::size_t x0 = lo(c.x - rmax);
  const std::size_t y0 = lo(c.y - rmax);
  const std::size_t x1 = std::min(raster.width(), static_cast<std::size_t>(std::ceil(c.x + rmax)) + 1);
  const std::size_t y1 = std::min(raster.height(), static_cast<std::size_t>(std::ceil(c.y + rmax)) + 1);

  std::vector<double> dist2;
  for (std::size_t y = y0; y < y1; ++y) {
    const double dy = static_cast<double>(y) - c.y;
    for (std::size_t x = x0; x < x1; ++x) {
      if (!raster.at(x, y)) continue;
      const double dx = static_cast<double>(x) - c.x;
      const double d2 = dx * dx + dy * dy;
      if (d2 <= rmax2) dist2.push_back(d2);
    }
  }
  std::sort(dist2.begin(), dist2.end());

  std::vector<ScaleCount> out;
  out.reserve(schedule.radii().size());
  for (const double r : schedule.radii()) {
    const auto n = std::upper_bound(dist2.begin(), dist2.end(), r * r) - dist2.begin();
    out.push_back({r, static_cast<std::uint64_t>(n)});
  }
  return out;
}

LogLogSeries radial_counts(const BinaryRaster& raster, const RadialSchedule& schedule) {
  std::vector<Point> pts;
  for (const auto& c : count_within_radii(raster, schedule)) {
    if (c.count > 0) pts.push_back({std::log(c.scale), std::log(static_cast<double>(c.count))});
  }
  if (pts.empty()) throw Error(ErrorCode::kDegenerate, "no occupied pixels within any radius");
  return LogLogSeries(std::move(pts));
}

DimensionEstimate estimate_radial_dimension(const BinaryRaster& raster,
                                            const RadialSchedule& schedule) {
  auto counts = count_within_radii(raster, schedule);
  std::erase_if(counts, [](const ScaleCount& c) { return c.count == 0; });
  if (counts.empty()) throw Error(ErrorCode::kDegenerate, "no occupied pixels within any radius");
  if (counts.size() < 3) {
    throw Error(ErrorCode::kTooFewSamples, "radial counting produced " +
                                               std::to_string(counts.size()) +
                                               " nonzero radii; need at least 3");
  }
  std::vector<Point> pts;
  for (const auto& c : counts) {
    pts.push_back({std::log(c.scale), std::log(static_cast<double>(c.count))});
  }
  LogLogSeries series(std::move(pts));
  const LineFit fit = ols_fit(series);
  return DimensionEstimate{fit.slope, fit, std::move(series), std::move(counts)};
}

}  // namespace fractrend
