#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fractrend {

struct DimensionSample {
  double t = 0.0;  // calendar year
  double d = 0.0;  // fractal dimension observed at t

  friend bool operator==(const DimensionSample&, const DimensionSample&) = default;
};

// A fractal observed at finitely many times. t strictly increasing, d finite.
class DimensionSeries {
 public:
  explicit DimensionSeries(std::vector<DimensionSample> samples);

  std::span<const DimensionSample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  std::vector<DimensionSample> samples_;
};

// Seeded multi-start configuration shared by both fits. Results depend only
// on (data, config); among equal objectives the lowest start index wins.
struct MultiStartConfig {
  static constexpr std::uint64_t kDefaultSeed = 1729;

  int starts = 24;
  int max_iterations = 20000;
  std::uint64_t seed = kDefaultSeed;
};

// ---------------------------------------------------------------------------
// Short-term model
//
//   phi(t) = c1 t + c2 + (t - c3)^2 sin(t - c4) / c5
// ---------------------------------------------------------------------------

struct DifferenceModelParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c5 = 1.0;
};

double eval_difference_model(const DifferenceModelParams& p, double t);

// phi(t + 1) - phi(t).
double difference_step(const DifferenceModelParams& p, double t);

// Sum over samples of |phi(t_i) - d_i|.
double l1_error(const DifferenceModelParams& p, const DimensionSeries& series);

struct DifferenceFit {
  DifferenceModelParams params;
  double l1 = 0.0;  // l1_error(params, series), recomputed on the returned params
  int best_start = 0;
};

// Minimizes the L1 error. Needs at least 6 samples (kTooFewSamples); throws
// kNonConvergence if every start yields a non-finite objective.
DifferenceFit fit_difference_model(const DimensionSeries& series,
                                   const MultiStartConfig& config = {});

// ---------------------------------------------------------------------------
// Long-term model
//
//   phi(t) = offset + K / (1 + A exp(-r t))
// ---------------------------------------------------------------------------

struct LogisticParams {
  double K = 1.0;
  double A = 1.0;
  double r = 0.0;
  double offset = 0.0;
};

double eval_logistic(const LogisticParams& p, double t);

// Offset-free right-hand side r y (1 - y / K) evaluated at y = eval - offset.
double logistic_rate(const LogisticParams& p, double t);

struct LogisticFit {
  LogisticParams params;
  double rmse = 0.0;
  int best_start = 0;
};

// Least-squares fit with the offset held fixed. Needs >= 4 samples and every
// d > offset (kDegenerate otherwise). Throws kNonConvergence when no start
// reaches the simplex tolerance within max_iterations.
LogisticFit fit_logistic(const DimensionSeries& series, double offset,
                         const MultiStartConfig& config = {});

// Closed-form solution through (0, d0): A = (K - d0) / d0, offset 0.
// Requires 0 < d0 < K.
LogisticParams logistic_solution_from_initial(double K, double r, double d0);

// Unit-step discretization of the logistic ODE:
//   x(t + 1) = b (1 - x(t)) x(t),  b = r + 1,  x = r (phi - offset) / ((r + 1) K).
struct DifferenceForm {
  double b = 1.0;
  double state_scale = 0.0;  // r / ((r + 1) K)
  double offset = 0.0;

  double state(double phi) const noexcept { return state_scale * (phi - offset); }
};

DifferenceForm logistic_to_difference(const LogisticParams& p);

// ---------------------------------------------------------------------------
// Stability of x <- b (1 - x) x
// ---------------------------------------------------------------------------

enum class StabilityClass {
  kLargeNeighborhoodStable,  // b in (1, 2]
  kNearEquilibriumStable,    // b in (2, 3)
  kPeriodTwoOscillation,     // b in (3, 1 + sqrt 5)
  kUnstable,                 // b in [1 + sqrt 5, inf)
  kOutOfRange,               // b <= 1, b == 3, NaN
};

std::string_view to_string(StabilityClass c);

StabilityClass classify_stability(double b);

// Orbit x_0 .. x_steps of x <- b (1 - x) x (steps + 1 values).
// Requires x0 in (0, 1) and steps >= 1.
std::vector<double> simulate_difference(double b, double x0, std::size_t steps);

enum class OrbitBehavior { kFixedPoint, kPeriodTwo, kOther };

std::string_view to_string(OrbitBehavior b);

struct OrbitSummary {
  OrbitBehavior behavior = OrbitBehavior::kOther;
  std::vector<double> cycle;  // limit value(s), ascending; empty for kOther
  bool monotone = false;      // whole orbit non-decreasing or non-increasing
};

// Inspects the last `tail` values: a fixed point if they agree within
// `tolerance`, period two if alternate values agree but neighbors do not.
OrbitSummary summarize_orbit(std::span<const double> orbit, double tolerance = 1e-9,
                             std::size_t tail = 64);

}  // namespace fractrend
