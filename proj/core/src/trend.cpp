#include "fractrend/trend.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "fractrend/error.hpp"
#include "fractrend/random.hpp"
#include "fractrend/regress.hpp"
#include "fractrend/simplex.hpp"

namespace fractrend {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_time(const DimensionSeries& s) {
  double m = 0.0;
  for (const auto& p : s.samples()) m += p.t;
  return m / static_cast<double>(s.size());
}

void require_samples(const DimensionSeries& s, std::size_t n, const char* what) {
  if (s.size() < n) {
    throw Error(ErrorCode::kTooFewSamples, std::string(what) + " needs at least " +
                                               std::to_string(n) + " samples, got " +
                                               std::to_string(s.size()));
  }
}

void require_config(const MultiStartConfig& c) {
  if (c.starts < 1) throw Error(ErrorCode::kInvalidArgument, "starts must be >= 1");
  if (c.max_iterations < 1) throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
}

// Short-term model in centered coordinates, tau = t - tm:
//   phi = c1 tau + level + amp (1 + u tau)^2 sin(t - phase)
// with u = 1 / (tm - c3) and amp = (tm - c3)^2 / c5. For fixed u the model
// is linear in (c1, level, amp cos(phase), -amp sin(phase)), so each start
// searches u alone with the rest projected out by least squares, then polishes
// all five coordinates on the L1 objective.
struct Centered {
  double c1, level, amp, u, phase;
};

constexpr double kMinU = 1e-12;

DifferenceModelParams to_public(const Centered& z, double tm) {
  double u = z.u;
  if (std::abs(u) < kMinU) u = std::copysign(kMinU, u == 0.0 ? 1.0 : u);
  const double dist = 1.0 / u;  // tm - c3
  double c5 = std::numeric_limits<double>::max();
  if (z.amp != 0.0) {
    const double q = dist * dist / z.amp;
    c5 = std::isfinite(q) ? q : std::copysign(std::numeric_limits<double>::max(), z.amp);
  }
  return DifferenceModelParams{z.c1, z.level - z.c1 * tm, tm - dist, z.phase, c5};
}

double centered_l1(const Centered& z, const DimensionSeries& s, double tm) {
  double sum = 0.0;
  for (const auto& p : s.samples()) {
    const double tau = p.t - tm;
    const double g = 1.0 + z.u * tau;
    sum += std::abs(z.c1 * tau + z.level + z.amp * g * g * std::sin(p.t - z.phase) - p.d);
  }
  return sum;
}

// Least-squares projection for a fixed u. Returns the full centered vector
// and the residual sum of squares.
std::pair<Centered, double> project(double u, const DimensionSeries& s, double tm) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd basis(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = s.samples()[static_cast<std::size_t>(i)];
    const double tau = p.t - tm;
    const double g = (1.0 + u * tau) * (1.0 + u * tau);
    basis(i, 0) = tau;
    basis(i, 1) = 1.0;
    basis(i, 2) = g * std::sin(p.t);
    basis(i, 3) = g * std::cos(p.t);
    rhs(i) = p.d;
  }
  const Eigen::VectorXd beta = basis.colPivHouseholderQr().solve(rhs);
  const double sse = (basis * beta - rhs).squaredNorm();
  // amp sin(t - phase) = amp cos(phase) sin t - amp sin(phase) cos t
  const double amp = std::hypot(beta(2), beta(3));
  const double phase = std::atan2(-beta(3), beta(2));
  return {Centered{beta(0), beta(1), amp, u, phase}, std::isfinite(sse) ? sse : kInf};
}

double logistic_sse(std::span<const double> th, const DimensionSeries& s, double tm,
                    double offset) {
  const double K = th[0];
  const double r = th[1];
  const double ell = th[2];
  double sse = 0.0;
  for (const auto& p : s.samples()) {
    const double y = offset + K / (1.0 + std::exp(ell - r * (p.t - tm)));
    const double e = y - p.d;
    sse += e * e;
  }
  return sse;
}

}  // namespace

DimensionSeries::DimensionSeries(std::vector<DimensionSample> samples)
    : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].t) || !std::isfinite(samples_[i].d)) {
      throw Error(ErrorCode::kInvalidArgument, "dimension series contains a non-finite value");
    }
    if (i > 0 && samples_[i].t <= samples_[i - 1].t) {
      throw Error(ErrorCode::kInvalidArgument, "dimension series times must strictly increase");
    }
  }
}

double eval_difference_model(const DifferenceModelParams& p, double t) {
  const double dt = t - p.c3;
  return p.c1 * t + p.c2 + dt * dt * std::sin(t - p.c4) / p.c5;
}

double difference_step(const DifferenceModelParams& p, double t) {
  return eval_difference_model(p, t + 1.0) - eval_difference_model(p, t);
}

double l1_error(const DifferenceModelParams& p, const DimensionSeries& series) {
  double sum = 0.0;
  for (const auto& s : series.samples()) sum += std::abs(eval_difference_model(p, s.t) - s.d);
  return sum;
}

DifferenceFit fit_difference_model(const DimensionSeries& series, const MultiStartConfig& config) {
  require_samples(series, 6, "difference model fit");
  require_config(config);

  const double tm = mean_time(series);
  const double half_span =
      std::max(0.5, (series.samples().back().t - series.samples().front().t) / 2.0);
  double scale = 0.0;
  for (const auto& p : series.samples()) scale = std::max(scale, std::abs(p.d));
  scale = std::max(scale, 1e-3);

  SplitMix64 rng(config.seed);
  SimplexOptions search;
  search.max_iterations = config.max_iterations;
  search.f_tolerance = 0.0;
  search.x_tolerance = 1e-13;
  SimplexOptions polish = search;

  DifferenceFit best;
  best.l1 = kInf;
  for (int k = 0; k < config.starts; ++k) {
    // Start 0 is the far-vertex limit (u = 0); the rest cover
    // u * half_span in (-3, 3) on a jittered grid.
    double g = 0.0;
    if (k > 0) {
      const double cell = 6.0 / config.starts;
      g = -3.0 + cell * (k - 1 + rng.uniform(0.0, 1.0));
    } else {
      rng.next();
    }
    const double u0 = g / half_span;

    const Objective projected = [&](std::span<const double> v) {
      return project(v[0], series, tm).second;
    };
    const std::array<double, 1> ustep{0.25 / half_span};
    const SimplexResult ures = nelder_mead(projected, {u0}, ustep, search);
    Centered z = project(ures.x[0], series, tm).first;

    const Objective l1 = [&](std::span<const double> v) {
      return centered_l1(Centered{v[0], v[1], v[2], v[3], v[4]}, series, tm);
    };
    const std::array<double, 5> step{
        1e-3 * scale / half_span, 1e-3 * scale, 1e-3 * scale + 1e-3 * std::abs(z.amp),
        1e-3 / half_span, 1e-3};
    const SimplexResult zres =
        nelder_mead(l1, {z.c1, z.level, z.amp, z.u, z.phase}, step, polish);
    z = Centered{zres.x[0], zres.x[1], zres.x[2], zres.x[3], zres.x[4]};

    const DifferenceModelParams params = to_public(z, tm);
    const double err = l1_error(params, series);
    if (std::isfinite(err) && err < best.l1) {
      best = DifferenceFit{params, err, k};
    }
  }
  if (!std::isfinite(best.l1)) {
    throw Error(ErrorCode::kNonConvergence, "difference model objective non-finite at every start");
  }
  return best;
}

double eval_logistic(const LogisticParams& p, double t) {
  return p.offset + p.K / (1.0 + std::exp(std::log(p.A) - p.r * t));
}

double logistic_rate(const LogisticParams& p, double t) {
  const double y = eval_logistic(p, t) - p.offset;
  return p.r * y * (1.0 - y / p.K);
}

LogisticFit fit_logistic(const DimensionSeries& series, double offset,
                         const MultiStartConfig& config) {
  require_samples(series, 4, "logistic fit");
  require_config(config);
  if (!std::isfinite(offset)) throw Error(ErrorCode::kInvalidArgument, "offset must be finite");

  double top = 0.0;
  for (const auto& p : series.samples()) {
    if (!(p.d > offset)) {
      std::ostringstream os;
      os << "sample at t=" << p.t << " has d=" << p.d << " not above offset " << offset;
      throw Error(ErrorCode::kDegenerate, os.str());
    }
    top = std::max(top, p.d - offset);
  }

  const double tm = mean_time(series);
  const double n = static_cast<double>(series.size());

  // Linearized start for a capacity guess: ln(K / y - 1) = ell - r tau.
  auto linearized = [&](double K) {
    std::vector<Point> pts;
    pts.reserve(series.size());
    for (const auto& p : series.samples()) {
      pts.push_back({p.t - tm, std::log(K / (p.d - offset) - 1.0)});
    }
    const LineFit f = ols_fit(pts);
    return std::array<double, 3>{K, -f.slope, f.intercept};
  };

  SplitMix64 rng(config.seed);
  SimplexOptions opt;
  opt.max_iterations = config.max_iterations;
  opt.f_tolerance = 1e-24;
  opt.x_tolerance = 1e-12;

  const Objective sse = [&](std::span<const double> th) {
    if (!(th[0] > 0.0)) return kInf;
    return logistic_sse(th, series, tm, offset);
  };

  LogisticFit best;
  best.rmse = kInf;
  bool any_converged = false;
  for (int k = 0; k < config.starts; ++k) {
    // Start 0 uses the canonical 5% headroom over the observed maximum; the
    // others draw the headroom from (0.1%, 100%).
    const double headroom = k == 0 ? 0.05 : std::exp(rng.uniform(std::log(1e-3), 0.0));
    if (k == 0) rng.next();
    const auto th0 = linearized(top * (1.0 + headroom));
    const std::array<double, 3> step{0.05 * th0[0], std::max(0.1 * std::abs(th0[1]), 1e-3), 0.1};
    const SimplexResult res = nelder_mead(sse, {th0[0], th0[1], th0[2]}, step, opt);
    if (!std::isfinite(res.value)) continue;
    any_converged = any_converged || res.converged;

    const double K = res.x[0];
    const double r = res.x[1];
    const LogisticParams params{K, std::exp(res.x[2] + r * tm), r, offset};
    double err = 0.0;
    for (const auto& p : series.samples()) {
      const double e = eval_logistic(params, p.t) - p.d;
      err += e * e;
    }
    const double rmse = std::sqrt(err / n);
    if (std::isfinite(rmse) && rmse < best.rmse) best = LogisticFit{params, rmse, k};
  }
  if (!any_converged || !std::isfinite(best.rmse)) {
    throw Error(ErrorCode::kNonConvergence,
                "logistic fit did not converge within " + std::to_string(config.max_iterations) +
                    " iterations");
  }
  return best;
}

LogisticParams logistic_solution_from_initial(double K, double r, double d0) {
  if (!(K > 0.0) || !(d0 > 0.0 && d0 < K) || !std::isfinite(r)) {
    std::ostringstream os;
    os << "initial value " << d0 << " outside (0, K=" << K << ")";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  return LogisticParams{K, (K - d0) / d0, r, 0.0};
}

DifferenceForm logistic_to_difference(const LogisticParams& p) {
  if (!(p.K > 0.0)) throw Error(ErrorCode::kInvalidArgument, "carrying capacity must be positive");
  return DifferenceForm{p.r + 1.0, p.r / ((p.r + 1.0) * p.K), p.offset};
}

std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::kLargeNeighborhoodStable: return "LargeNeighborhoodStable";
    case StabilityClass::kNearEquilibriumStable: return "NearEquilibriumStable";
    case StabilityClass::kPeriodTwoOscillation: return "PeriodTwoOscillation";
    case StabilityClass::kUnstable: return "Unstable";
    case StabilityClass::kOutOfRange: return "OutOfRange";
  }
  return "OutOfRange";
}

StabilityClass classify_stability(double b) {
  static const double kChaosEdge = 1.0 + std::sqrt(5.0);
  if (b > 1.0 && b <= 2.0) return StabilityClass::kLargeNeighborhoodStable;
  if (b > 2.0 && b < 3.0) return StabilityClass::kNearEquilibriumStable;
  if (b > 3.0 && b < kChaosEdge) return StabilityClass::kPeriodTwoOscillation;
  if (b >= kChaosEdge) return StabilityClass::kUnstable;  // includes +inf
  return StabilityClass::kOutOfRange;
}

std::vector<double> simulate_difference(double b, double x0, std::size_t steps) {
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "orbit start must lie in (0, 1)");
  }
  if (steps < 1) throw Error(ErrorCode::kInvalidArgument, "orbit needs at least one step");
  if (!std::isfinite(b)) throw Error(ErrorCode::kInvalidArgument, "b must be finite");
  std::vector<double> orbit;
  orbit.reserve(steps + 1);
  orbit.push_back(x0);
  double x = x0;
  for (std::size_t i = 0; i < steps; ++i) {
    x = b * (1.0 - x) * x;
    orbit.push_back(x);
  }
  return orbit;
}

std::string_view to_string(OrbitBehavior b) {
  switch (b) {
    case OrbitBehavior::kFixedPoint: return "FixedPoint";
    case OrbitBehavior::kPeriodTwo: return "PeriodTwo";
    case OrbitBehavior::kOther: return "Other";
  }
  return "Other";
}

OrbitSummary summarize_orbit(std::span<const double> orbit, double tolerance, std::size_t tail) {
  OrbitSummary out;
  if (orbit.empty()) return out;

  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < orbit.size(); ++i) {
    up = up && orbit[i] >= orbit[i - 1];
    down = down && orbit[i] <= orbit[i - 1];
  }
  out.monotone = up || down;

  tail = std::min(tail, orbit.size());
  if (tail < 3) return out;
  const auto last = orbit.subspan(orbit.size() - tail);
  for (double v : last) {
    if (!std::isfinite(v)) return out;
  }

  auto spread = [&](std::size_t parity) {
    double lo = kInf;
    double hi = -kInf;
    for (std::size_t i = parity; i < last.size(); i += 2) {
      lo = std::min(lo, last[i]);
      hi = std::max(hi, last[i]);
    }
    return std::pair{lo, hi};
  };
  const auto [lo_all, hi_all] = std::minmax_element(last.begin(), last.end());
  if (*hi_all - *lo_all <= tolerance) {
    out.behavior = OrbitBehavior::kFixedPoint;
    out.cycle = {last.back()};
    return out;
  }
  const auto [lo0, hi0] = spread(0);
  const auto [lo1, hi1] = spread(1);
  if (hi0 - lo0 <= tolerance && hi1 - lo1 <= tolerance) {
    out.behavior = OrbitBehavior::kPeriodTwo;
    out.cycle = {std::min(last[last.size() - 1], last[last.size() - 2]),
                 std::max(last[last.size() - 1], last[last.size() - 2])};
  }
  return out;
}

}  // namespace fractrend
