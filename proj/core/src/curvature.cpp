#include "fractrend/curvature.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fractrend/error.hpp"

namespace fractrend {
namespace {

double kappa(const Segment& s, double t) {
  if (s.kind == SegmentKind::kLinear) return 0.0;
  const double d1 = s.first_derivative(t);
  const double d2 = s.second_derivative(t);
  const double base = 1.0 + d1 * d1;
  // Far along a steep exponential d1^2 overflows; the true value is ~0 there.
  if (!std::isfinite(base)) return 0.0;
  return std::abs(d2) / (base * std::sqrt(base));
}

}  // namespace

double pointwise_curvature(const Segment& segment, double t) {
  if (!(t >= segment.t_start && t <= segment.t_end)) {
    std::ostringstream os;
    os << "t=" << t << " outside segment [" << segment.t_start << ", " << segment.t_end << "]";
    throw Error(ErrorCode::kOutOfBounds, os.str());
  }
  return kappa(segment, t);
}

double average_curvature(const Segment& segment, double t0, double t1, int panels) {
  if (!(t0 < t1) || t0 < segment.t_start || t1 > segment.t_end) {
    std::ostringstream os;
    os << "averaging interval [" << t0 << ", " << t1 << "] invalid for segment ["
       << segment.t_start << ", " << segment.t_end << "]";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  if (panels < 2 || panels % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "Simpson panel count must be even and >= 2");
  }
  if (segment.kind == SegmentKind::kLinear) return 0.0;

  const double h = (t1 - t0) / panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double v = kappa(segment, t0 + i * h);
    (i % 2 ? odd : even) += v;
  }
  const double integral = h / 3.0 * (kappa(segment, t0) + 4.0 * odd + 2.0 * even + kappa(segment, t1));
  return integral / (t1 - t0);
}

double average_curvature(const Segment& segment, int panels) {
  return average_curvature(segment, segment.t_start, segment.t_end, panels);
}

std::vector<AlphaRatio> alpha_ratios(const PiecewiseModel& model, int panels) {
  std::vector<AlphaRatio> out;
  int prev = 0;  // 1-based period of the last curvature-bearing segment, 0 if none
  double prev_avg = 0.0;
  int bearing = 0;
  const auto segs = model.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].kind == SegmentKind::kLinear) continue;
    ++bearing;
    const int period = static_cast<int>(i) + 1;
    const double avg = average_curvature(segs[i], panels);
    if (prev != 0) {
      if (!(avg > 0.0)) {
        throw Error(ErrorCode::kDegenerate,
                    "period " + std::to_string(period) + " has zero average curvature");
      }
      out.push_back(AlphaRatio{period, prev, prev_avg, avg, prev_avg / avg});
    }
    prev = period;
    prev_avg = avg;
  }
  if (bearing < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha ratios need at least 2 exponential segments, got " + std::to_string(bearing));
  }
  return out;
}

SimilarityReport compare_similarity(const PiecewiseModel& a, const PiecewiseModel& b,
                                    double tolerance, int panels) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw Error(ErrorCode::kInvalidArgument, "similarity tolerance must be positive and finite");
  }
  const auto ra = alpha_ratios(a, panels);
  const auto rb = alpha_ratios(b, panels);
  auto indices = [](const std::vector<AlphaRatio>& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i].index;
    return os.str();
  };
  bool same = ra.size() == rb.size();
  for (std::size_t i = 0; same && i < ra.size(); ++i) same = ra[i].index == rb[i].index;
  if (!same) {
    throw Error(ErrorCode::kInvalidArgument, "alpha index sets differ: {" + indices(ra) +
                                                 "} vs {" + indices(rb) + "}");
  }

  SimilarityReport report;
  report.tolerance = tolerance;
  report.similar = true;
  const double bound = std::log1p(tolerance);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    SimilarityEntry e;
    e.index = ra[i].index;
    e.alpha_a = ra[i].alpha;
    e.alpha_b = rb[i].alpha;
    e.log_ratio = std::abs(std::log(e.alpha_a / e.alpha_b));
    e.similar = e.log_ratio <= bound;
    report.similar = report.similar && e.similar;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace fractrend
