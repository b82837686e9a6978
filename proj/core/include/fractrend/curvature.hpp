#pragma once

#include <cstddef>
#include <vector>

#include "fractrend/population.hpp"

namespace fractrend {

// Curvature of the graph curve t -> (t, P(t)):
//   kappa(t) = |P''(t)| / (1 + P'(t)^2)^(3/2)
// Throws kOutOfBounds for t outside [t_start, t_end].
double pointwise_curvature(const Segment& segment, double t);

inline constexpr int kDefaultPanels = 1024;

// Mean of kappa over [t0, t1] by composite Simpson with `panels` (even, >= 2)
// subintervals. [t0, t1] must lie inside the segment with t0 < t1.
double average_curvature(const Segment& segment, double t0, double t1,
                         int panels = kDefaultPanels);

// Mean of kappa over the segment's own year range.
double average_curvature(const Segment& segment, int panels = kDefaultPanels);

struct AlphaRatio {
  int index = 0;                // 1-based period number of the denominator segment
  int numerator_period = 0;     // 1-based period number of the numerator segment
  double numerator = 0.0;       // average curvature of the numerator segment
  double denominator = 0.0;     // average curvature of the denominator segment
  double alpha = 0.0;
};

// alpha_i = A(previous curvature-bearing period) / A(period i) for every
// exponential period after the first one. Linear periods carry no curvature
// and are skipped, so the ratio bridges them. Throws kInvalidArgument when
// fewer than two exponential segments exist and kDegenerate when a
// denominator average curvature is zero.
std::vector<AlphaRatio> alpha_ratios(const PiecewiseModel& model, int panels = kDefaultPanels);

struct SimilarityEntry {
  int index = 0;
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  double log_ratio = 0.0;  // |ln(alpha_a / alpha_b)|
  bool similar = false;
};

struct SimilarityReport {
  double tolerance = 0.0;
  std::vector<SimilarityEntry> entries;
  bool similar = false;  // every entry similar
};

// Per index: similar iff |ln(alpha_a / alpha_b)| <= ln(1 + tolerance).
// Throws kInvalidArgument unless both models expose the same alpha indices
// and tolerance > 0.
SimilarityReport compare_similarity(const PiecewiseModel& a, const PiecewiseModel& b,
                                    double tolerance, int panels = kDefaultPanels);

}  // namespace fractrend
