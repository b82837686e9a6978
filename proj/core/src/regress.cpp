#include "fractrend/regress.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fractrend/error.hpp"

namespace fractrend {

LogLogSeries::LogLogSeries(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "log-log series needs at least 2 points, got " + std::to_string(points_.size()));
  }
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kInvalidArgument, "log-log series contains a non-finite value");
    }
  }
  const bool increasing = points_[1].x > points_[0].x;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const bool ok = increasing ? points_[i].x > points_[i - 1].x : points_[i].x < points_[i - 1].x;
    if (!ok) throw Error(ErrorCode::kInvalidArgument, "log-log series x not strictly monotone");
  }
}

LineFit ols_fit(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "line fit needs at least 2 points, got " + std::to_string(n));
  }

  // Centered sums keep the calendar-year fits (x ~ 2000) well conditioned.
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += p.x;
    mean_y += p.y;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - mean_x;
    const double dy = p.y - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::kDegenerate, "line fit: all x values are equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;

  double ss_res = 0.0;
  for (const auto& p : points) {
    const double r = p.y - fit(p.x);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.stderr_slope = n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace fractrend
