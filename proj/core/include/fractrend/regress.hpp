#pragma once

#include <span>
#include <vector>

namespace fractrend {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Paired (ln scale, ln count) samples. At least two points, x strictly
// monotone (either direction), every coordinate finite.
class LogLogSeries {
 public:
  explicit LogLogSeries(std::vector<Point> points);

  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<Point> points_;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  double stderr_slope = 0.0;

  double operator()(double x) const noexcept { return slope * x + intercept; }
};

// Unweighted ordinary least squares of y on x. r_squared is 1 when the
// response has zero variance; stderr_slope is 0 for two points.
// Throws kTooFewSamples for < 2 points and kDegenerate when all x coincide.
LineFit ols_fit(std::span<const Point> points);
inline LineFit ols_fit(const LogLogSeries& series) { return ols_fit(series.points()); }

}  // namespace fractrend
