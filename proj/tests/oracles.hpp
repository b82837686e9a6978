#pragma once

// Independent reference computations used only by tests. Each one takes the
// slow, obvious route so it shares no code path with the library.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "fractrend/raster.hpp"

namespace fractrend::oracle {

// Visits every grid cell and scans its pixels.
inline std::uint64_t box_count(const BinaryRaster& b, std::size_t size) {
  std::uint64_t n = 0;
  for (std::size_t cy = 0; cy * size < b.height(); ++cy) {
    for (std::size_t cx = 0; cx * size < b.width(); ++cx) {
      bool hit = false;
      for (std::size_t y = cy * size; y < std::min(b.height(), (cy + 1) * size) && !hit; ++y) {
        for (std::size_t x = cx * size; x < std::min(b.width(), (cx + 1) * size) && !hit; ++x) {
          hit = b.at(x, y);
        }
      }
      n += hit;
    }
  }
  return n;
}

// Tests every pixel of the raster against the disk.
inline std::uint64_t disk_count(const BinaryRaster& b, double cx, double cy, double r) {
  std::uint64_t n = 0;
  for (std::size_t y = 0; y < b.height(); ++y) {
    for (std::size_t x = 0; x < b.width(); ++x) {
      if (b.at(x, y) && std::hypot(double(x) - cx, double(y) - cy) <= r) ++n;
    }
  }
  return n;
}

// Least squares slope from the textbook normal-equation formula (uncentered).
inline double naive_slope(const std::vector<std::array<double, 2>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Composite trapezoid rule.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, long panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.5 * (f(a) + f(b));
  for (long i = 1; i < panels; ++i) sum += f(a + h * static_cast<double>(i));
  return sum * h;
}

using Vec3 = std::array<double, 3>;

inline Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Curvature of gamma(t) = (t, a b^t, 0) from ||gamma'' x gamma'|| / ||gamma'||^3.
inline double exp_curve_curvature(double a, double b, double t) {
  const double lb = std::log(b);
  const double p = a * std::pow(b, t);
  const Vec3 d1{1.0, p * lb, 0.0};
  const Vec3 d2{0.0, p * lb * lb, 0.0};
  const double n1 = norm(d1);
  return norm(cross(d2, d1)) / (n1 * n1 * n1);
}

// Central difference of f at t with step h.
inline double central_diff(const std::function<double(double)>& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

}  // namespace fractrend::oracle
