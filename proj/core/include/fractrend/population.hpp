#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace fractrend {

struct PopulationSample {
  double year = 0.0;
  double population = 0.0;
};

// Census counts; years strictly increasing, populations positive and finite.
class PopulationSeries {
 public:
  explicit PopulationSeries(std::vector<PopulationSample> samples);

  std::span<const PopulationSample> samples() const noexcept { return samples_; }

 private:
  std::vector<PopulationSample> samples_;
};

enum class SegmentKind { kExponential, kLinear };

std::string_view to_string(SegmentKind kind);
// Accepts "exponential" / "linear"; throws kInvalidArgument otherwise.
SegmentKind parse_segment_kind(std::string_view text);

// exponential: P(t) = a * b^t (a > 0, b > 0)
// linear:      P(t) = a + b * t
struct Segment {
  SegmentKind kind = SegmentKind::kExponential;
  double t_start = 0.0;
  double t_end = 0.0;
  double a = 0.0;
  double b = 0.0;

  double value(double t) const;
  double first_derivative(double t) const;
  double second_derivative(double t) const;
};

// Ordered segments; t_start < t_end within each, no overlap between
// neighbors (touching endpoints and gaps are allowed).
class PiecewiseModel {
 public:
  explicit PiecewiseModel(std::vector<Segment> segments);

  std::span<const Segment> segments() const noexcept { return segments_; }

 private:
  std::vector<Segment> segments_;
};

struct Period {
  double t_start = 0.0;
  double t_end = 0.0;
  SegmentKind kind = SegmentKind::kExponential;
};

// OLS fit of the samples with year in [t_start, t_end]: ln P on t for
// exponential periods, P on t for linear ones. Needs >= 2 samples.
Segment fit_segment(const PopulationSeries& series, const Period& period);

// One fit_segment per period, in order. Periods must not overlap.
PiecewiseModel fit_piecewise(const PopulationSeries& series, std::span<const Period> periods);

}  // namespace fractrend
