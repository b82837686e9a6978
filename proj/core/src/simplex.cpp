#include "fractrend/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fractrend/error.hpp"

namespace fractrend {
namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

using Vertex = std::vector<double>;

struct Run {
  Vertex best;
  double value;
  int iterations;
  int evaluations;
  bool converged;
};

Run single_run(const Objective& f, const Vertex& start, std::span<const double> step,
               const SimplexOptions& opt) {
  const std::size_t n = start.size();
  int evaluations = 0;
  auto eval = [&](const Vertex& v) {
    ++evaluations;
    const double y = f(v);
    return std::isfinite(y) ? y : std::numeric_limits<double>::infinity();
  };

  std::vector<Vertex> x(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += step[i];
  std::vector<double> fx(n + 1);
  for (std::size_t j = 0; j <= n; ++j) fx[j] = eval(x[j]);

  std::vector<std::size_t> order(n + 1);
  Vertex centroid(n), xr(n), xe(n), xc(n);
  auto along = [&](Vertex& out, double t) {
    // out = centroid + t * (centroid - worst)
    const Vertex& worst = x[order[n]];
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (centroid[i] - worst[i]);
  };

  int it = 0;
  bool converged = false;
  for (; it < opt.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    const std::size_t ib = order[0];
    const std::size_t iw = order[n];
    const std::size_t is = order[n - 1];

    double xspread = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(x[order[j]][i] - x[ib][i]) / (1.0 + std::abs(x[ib][i]));
        xspread = std::max(xspread, d);
      }
    }
    if (std::isfinite(fx[iw]) && fx[iw] - fx[ib] <= opt.f_tolerance && xspread <= opt.x_tolerance) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += x[order[j]][i];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    along(xr, kReflect);
    const double fr = eval(xr);
    if (fr < fx[ib]) {
      along(xe, kReflect * kExpand);
      const double fe = eval(xe);
      if (fe < fr) {
        x[iw] = xe;
        fx[iw] = fe;
      } else {
        x[iw] = xr;
        fx[iw] = fr;
      }
      continue;
    }
    if (fr < fx[is]) {
      x[iw] = xr;
      fx[iw] = fr;
      continue;
    }
    // Outside contraction when the reflected point beats the worst, inside otherwise.
    const bool outside = fr < fx[iw];
    along(xc, outside ? kReflect * kContract : -kContract);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fx[iw])) {
      x[iw] = xc;
      fx[iw] = fc;
      continue;
    }
    for (std::size_t j = 1; j <= n; ++j) {
      Vertex& v = x[order[j]];
      for (std::size_t i = 0; i < n; ++i) v[i] = x[ib][i] + kShrink * (v[i] - x[ib][i]);
      fx[order[j]] = eval(v);
    }
  }

  const auto ib = static_cast<std::size_t>(std::min_element(fx.begin(), fx.end()) - fx.begin());
  return Run{x[ib], fx[ib], it, evaluations, converged};
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> start,
                          std::span<const double> step, const SimplexOptions& options) {
  if (start.empty() || step.size() != start.size()) {
    throw Error(ErrorCode::kInvalidArgument, "simplex start and step sizes must match");
  }

  Run run = single_run(f, start, step, options);
  SimplexResult result{run.best, run.value, run.iterations, run.evaluations, run.converged};

  // Restart around the incumbent; a collapsed simplex often stalls on
  // non-smooth objectives short of the true minimum.
  // Each restart uses a tenfold smaller simplex than the one before.
  std::vector<double> scaled(step.begin(), step.end());
  for (int r = 0; r < options.restarts; ++r) {
    Run again = single_run(f, result.x, scaled, options);
    for (auto& s : scaled) s *= 0.1;
    result.iterations += again.iterations;
    result.evaluations += again.evaluations;
    const bool improved = again.value < result.value;
    if (improved) {
      result.x = std::move(again.best);
      result.value = again.value;
    }
    result.converged = again.converged;
    if (!improved) break;
  }
  return result;
}

}  // namespace fractrend
