#include "fractrend/population.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fractrend/error.hpp"
#include "fractrend/regress.hpp"

namespace fractrend {
namespace {

std::string range(double t0, double t1) {
  std::ostringstream os;
  os << "[" << t0 << ", " << t1 << "]";
  return os.str();
}

void check_segment(const Segment& s) {
  if (!(s.t_start < s.t_end)) {
    throw Error(ErrorCode::kInvalidArgument, "segment " + range(s.t_start, s.t_end) +
                                                 " must have t_start < t_end");
  }
  if (!std::isfinite(s.a) || !std::isfinite(s.b)) {
    throw Error(ErrorCode::kInvalidArgument, "segment coefficients must be finite");
  }
  if (s.kind == SegmentKind::kExponential && !(s.a > 0.0 && s.b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "exponential segment " + range(s.t_start, s.t_end) + " needs a > 0 and b > 0");
  }
}

}  // namespace

PopulationSeries::PopulationSeries(std::vector<PopulationSample> samples)
    : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.year) || !std::isfinite(s.population)) {
      throw Error(ErrorCode::kInvalidArgument, "population series contains a non-finite value");
    }
    if (!(s.population > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "population must be positive");
    }
    if (i > 0 && s.year <= samples_[i - 1].year) {
      throw Error(ErrorCode::kInvalidArgument, "population years must strictly increase");
    }
  }
}

std::string_view to_string(SegmentKind kind) {
  return kind == SegmentKind::kExponential ? "exponential" : "linear";
}

SegmentKind parse_segment_kind(std::string_view text) {
  if (text == "exponential") return SegmentKind::kExponential;
  if (text == "linear") return SegmentKind::kLinear;
  throw Error(ErrorCode::kInvalidArgument, "unknown segment kind '" + std::string(text) + "'");
}

// Exponential terms go through logs: a * b^t overflows for calendar t long
// before the product does.
double Segment::value(double t) const {
  if (kind == SegmentKind::kLinear) return a + b * t;
  return std::exp(std::log(a) + t * std::log(b));
}

double Segment::first_derivative(double t) const {
  if (kind == SegmentKind::kLinear) return b;
  return std::log(b) * value(t);
}

double Segment::second_derivative(double t) const {
  if (kind == SegmentKind::kLinear) return 0.0;
  const double lb = std::log(b);
  return lb * lb * value(t);
}

PiecewiseModel::PiecewiseModel(std::vector<Segment> segments) : segments_(std::move(segments)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    check_segment(segments_[i]);
    if (i > 0 && segments_[i].t_start < segments_[i - 1].t_end) {
      throw Error(ErrorCode::kInvalidArgument,
                  "segments " + range(segments_[i - 1].t_start, segments_[i - 1].t_end) + " and " +
                      range(segments_[i].t_start, segments_[i].t_end) +
                      " overlap or are out of order");
    }
  }
}

Segment fit_segment(const PopulationSeries& series, const Period& period) {
  if (!(period.t_start < period.t_end)) {
    throw Error(ErrorCode::kInvalidArgument,
                "period " + range(period.t_start, period.t_end) + " must have t_start < t_end");
  }
  std::vector<Point> pts;
  for (const auto& s : series.samples()) {
    if (s.year < period.t_start || s.year > period.t_end) continue;
    const double y = period.kind == SegmentKind::kExponential ? std::log(s.population)
                                                              : s.population;
    pts.push_back({s.year, y});
  }
  if (pts.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples, "period " + range(period.t_start, period.t_end) +
                                               " holds " + std::to_string(pts.size()) +
                                               " samples; need at least 2");
  }
  const LineFit fit = ols_fit(pts);
  Segment seg{period.kind, period.t_start, period.t_end, fit.intercept, fit.slope};
  if (period.kind == SegmentKind::kExponential) {
    seg.a = std::exp(fit.intercept);
    seg.b = std::exp(fit.slope);
  }
  return seg;
}

PiecewiseModel fit_piecewise(const PopulationSeries& series, std::span<const Period> periods) {
  for (std::size_t i = 1; i < periods.size(); ++i) {
    if (periods[i].t_start < periods[i - 1].t_end) {
      throw Error(ErrorCode::kInvalidArgument,
                  "periods " + range(periods[i - 1].t_start, periods[i - 1].t_end) + " and " +
                      range(periods[i].t_start, periods[i].t_end) +
                      " overlap or are out of order");
    }
  }
  std::vector<Segment> segments;
  segments.reserve(periods.size());
  for (const auto& p : periods) segments.push_back(fit_segment(series, p));
  return PiecewiseModel(std::move(segments));
}

}  // namespace fractrend
