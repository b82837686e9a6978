#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fractrend/error.hpp"
#include "fractrend/random.hpp"
#include "fractrend/trend.hpp"
#include "oracles.hpp"

using namespace fractrend;

namespace {

DimensionSeries sample_model(const DifferenceModelParams& p, double t0, double t1) {
  std::vector<DimensionSample> s;
  for (double t = t0; t <= t1; t += 1.0) s.push_back({t, eval_difference_model(p, t)});
  return DimensionSeries(s);
}

DimensionSeries sample_logistic(const LogisticParams& p, const std::vector<double>& years) {
  std::vector<DimensionSample> s;
  for (double t : years) s.push_back({t, eval_logistic(p, t)});
  return DimensionSeries(s);
}

// Closed form of phi(t + 1) - phi(t), expanded by hand.
double expanded_step(const DifferenceModelParams& p, double t) {
  return p.c1 + ((t + 1 - p.c3) * (t + 1 - p.c3) * std::sin(t + 1 - p.c4) -
                 (t - p.c3) * (t - p.c3) * std::sin(t - p.c4)) /
                    p.c5;
}

}  // namespace

TEST_CASE("DimensionSeries invariants") {
  CHECK_THROWS_AS(DimensionSeries({{2000, 1.5}, {2000, 1.6}}), Error);
  CHECK_THROWS_AS(DimensionSeries({{2000, NAN}}), Error);
  CHECK_NOTHROW(DimensionSeries({{2000, 1.5}, {2001, 1.6}}));
}

TEST_CASE("difference model evaluation") {
  const DifferenceModelParams lin{1.0, 0.0, 0.0, 0.0, 1e18};
  CHECK(eval_difference_model(lin, 5.0) == doctest::Approx(5.0));
  CHECK(difference_step(lin, 5.0) == doctest::Approx(1.0));

  // Printed constants and their printed unit difference.
  const DifferenceModelParams printed{0.003481, 5.494, 659.6, 1.847, 1.8e8};
  for (double t = 1990; t <= 2030; t += 0.37) {
    const double printed_step =
        0.003481 + ((t - 658.6) * (t - 658.6) * std::sin(t - 0.847) -
                    (t - 659.6) * (t - 659.6) * std::sin(t - 1.847)) /
                       180000000.0;
    CHECK(difference_step(printed, t) == doctest::Approx(printed_step).epsilon(1e-9));
  }
}

TEST_CASE("difference_step identity over random parameters") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const DifferenceModelParams p{rng.uniform(-0.01, 0.01), rng.uniform(-10, 10),
                                  rng.uniform(0, 2000), rng.uniform(-3, 3),
                                  (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(1e6, 1e9)};
    const double t = rng.uniform(1900, 2100);
    const double lhs = difference_step(p, t);
    const double rhs = eval_difference_model(p, t + 1) - eval_difference_model(p, t);
    CHECK(lhs == rhs);
    // The hand expansion matches to 1e-12 of the magnitudes involved.
    const double mag = std::max({std::abs(eval_difference_model(p, t)),
                                 std::abs(eval_difference_model(p, t + 1)), std::abs(lhs)});
    CHECK(std::abs(lhs - expanded_step(p, t)) <= 1e-12 * mag);
  }
}

TEST_CASE("difference model fit on self-generated data") {
  const DifferenceModelParams truth{0.003, -4.5, 660, 1.8, 1.8e8};
  const auto series = sample_model(truth, 2000, 2020);
  const auto fit = fit_difference_model(series);
  CHECK(fit.l1 <= 1e-6);
  CHECK(fit.l1 == l1_error(fit.params, series));
  for (const auto& s : series.samples()) {
    CHECK(std::abs(eval_difference_model(fit.params, s.t) - s.d) <= 1e-6);
  }
}

TEST_CASE("difference model fit on a flat series") {
  std::vector<DimensionSample> s;
  for (int t = 2000; t <= 2020; ++t) s.push_back({double(t), 1.5});
  const DimensionSeries series(s);
  const auto fit = fit_difference_model(series);
  CHECK(fit.l1 <= 1e-6);
  CHECK(std::abs(fit.params.c1) < 1e-6);
  double osc = 0.0;
  for (const auto& x : series.samples()) {
    const double dt = x.t - fit.params.c3;
    osc += std::abs(dt * dt * std::sin(x.t - fit.params.c4) / fit.params.c5);
  }
  CHECK(osc < 1e-6);
}

TEST_CASE("difference model fit preconditions and determinism") {
  const DimensionSeries three({{2000, 1.4}, {2001, 1.5}, {2002, 1.45}});
  try {
    fit_difference_model(three);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooFewSamples);
  }

  std::vector<DimensionSample> noisy;
  SplitMix64 rng(9);
  for (int t = 2000; t <= 2012; ++t) noisy.push_back({double(t), 1.45 + rng.uniform(-0.02, 0.02)});
  const DimensionSeries series(noisy);
  MultiStartConfig cfg;
  cfg.starts = 8;
  const auto a = fit_difference_model(series, cfg);
  const auto b = fit_difference_model(series, cfg);
  CHECK(a.l1 == b.l1);
  CHECK(a.params.c3 == b.params.c3);
  CHECK(a.best_start == b.best_start);
  // Never worse than the best straight line through the data it could represent.
  double flat = 0.0;
  for (const auto& x : series.samples()) flat += std::abs(x.d - 1.45);
  CHECK(a.l1 <= flat);
}

TEST_CASE("logistic fit round trip at the Manhattan years") {
  const LogisticParams truth{0.699952, 2.07022e40, 0.049432, 1.0};
  const auto series =
      sample_logistic(truth, {1900, 1915, 1924, 1935, 1956, 1986, 2006, 2013});
  const auto fit = fit_logistic(series, 1.0);
  CHECK(std::abs(fit.params.K / truth.K - 1) < 0.01);
  CHECK(std::abs(fit.params.r / truth.r - 1) < 0.02);
  CHECK(fit.rmse < 1e-6);
  CHECK(fit.params.offset == 1.0);
}

TEST_CASE("logistic fit round trip over random parameters") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const double K = rng.uniform(0.3, 1.0);
    const double r = rng.uniform(0.02, 0.2);
    const double mid = rng.uniform(1920, 1990);
    const LogisticParams truth{K, std::exp(r * mid), r, 1.0};
    const int n = 8 + static_cast<int>(rng.next() % 8);
    const double span = 3.0 / r * rng.uniform(1.0, 1.5);
    std::vector<double> years;
    for (int i = 0; i < n; ++i) years.push_back(mid - span / 2 + span * i / (n - 1));
    const auto fit = fit_logistic(sample_logistic(truth, years), 1.0);
    CHECK(std::abs(fit.params.K / K - 1) < 0.01);
    CHECK(std::abs(fit.params.r / r - 1) < 0.02);
  }
}

TEST_CASE("logistic fit degenerate inputs") {
  const DimensionSeries below({{1, 1.2}, {2, 0.9}, {3, 1.3}, {4, 1.4}});
  try {
    fit_logistic(below, 1.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
  }
  CHECK_THROWS_AS(fit_logistic(DimensionSeries({{1, 1.2}, {2, 1.3}, {3, 1.4}}), 1.0), Error);

  // Flat at half capacity: either a flat fit or a clean error, never a crash.
  const DimensionSeries flat({{1990, 1.35}, {2000, 1.35}, {2010, 1.35}, {2020, 1.35}});
  try {
    const auto fit = fit_logistic(flat, 1.0);
    CHECK(fit.rmse <= 1e-6);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonConvergence);
  }
}

TEST_CASE("closed-form logistic solves its ODE") {
  SplitMix64 rng(5150);
  for (int i = 0; i < 1000; ++i) {
    const LogisticParams p{rng.uniform(0.1, 5.0), std::exp(rng.uniform(-3, 3)),
                           rng.uniform(-1.0, 1.0), 0.0};
    const double t = rng.uniform(-5, 5);
    const auto phi = [&](double x) { return eval_logistic(p, x); };
    const double fd = oracle::central_diff(phi, t, 1e-4);
    const double y = phi(t);
    const double rhs = p.r * y * (1 - y / p.K);
    CHECK(std::abs(fd - rhs) <= 1e-6 * std::max(std::abs(rhs), 1e-3));
    CHECK(logistic_rate(p, t) == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("logistic solution through an initial value") {
  CHECK(logistic_solution_from_initial(2, 1, 1).A == doctest::Approx(1.0));
  CHECK(logistic_solution_from_initial(1, 0.5, 0.25).A == doctest::Approx(3.0));
  const auto p = logistic_solution_from_initial(1, 0.5, 0.25);
  CHECK(eval_logistic(p, 0.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(logistic_solution_from_initial(1, 0.5, 1), Error);
  CHECK_THROWS_AS(logistic_solution_from_initial(1, 0.5, 0), Error);
}

TEST_CASE("logistic to difference form") {
  const LogisticParams m{0.699952, 2.07022e40, 0.049432, 1.0};
  const auto form = logistic_to_difference(m);
  CHECK(form.b == 1.049432);
  CHECK(form.b - 1.0 == doctest::Approx(m.r).epsilon(1e-15));
  CHECK(form.state_scale == doctest::Approx(0.049432 / (1.049432 * 0.699952)));
  CHECK(form.state(1.0 + 0.699952) == doctest::Approx(0.049432 / 1.049432));
  CHECK(logistic_to_difference({1, 1, 0, 0}).b == 1.0);
  CHECK(logistic_to_difference({1, 1, 2, 0}).b == 3.0);
  SplitMix64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const double r = rng.uniform(-1, 4);
    CHECK(logistic_to_difference({1, 1, r, 0}).b - 1.0 == doctest::Approx(r).epsilon(1e-15));
  }
}

TEST_CASE("stability classes") {
  CHECK(classify_stability(1.5) == StabilityClass::kLargeNeighborhoodStable);
  CHECK(classify_stability(2.0) == StabilityClass::kLargeNeighborhoodStable);
  CHECK(classify_stability(2.5) == StabilityClass::kNearEquilibriumStable);
  CHECK(classify_stability(3.0) == StabilityClass::kOutOfRange);
  CHECK(classify_stability(3.1) == StabilityClass::kPeriodTwoOscillation);
  CHECK(classify_stability(1 + std::sqrt(5.0)) == StabilityClass::kUnstable);
  CHECK(classify_stability(4.0) == StabilityClass::kUnstable);
  CHECK(classify_stability(1.0) == StabilityClass::kOutOfRange);
  CHECK(classify_stability(0.5) == StabilityClass::kOutOfRange);
  CHECK(classify_stability(NAN) == StabilityClass::kOutOfRange);
  CHECK(to_string(StabilityClass::kPeriodTwoOscillation) == "PeriodTwoOscillation");
}

TEST_CASE("orbits") {
  const auto fixed = simulate_difference(1.5, 0.2, 500);
  CHECK(fixed.size() == 501);
  CHECK(fixed.back() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(summarize_orbit(fixed).behavior == OrbitBehavior::kFixedPoint);

  const auto two = summarize_orbit(simulate_difference(3.2, 0.3, 2000), 1e-6);
  CHECK(two.behavior == OrbitBehavior::kPeriodTwo);
  REQUIRE(two.cycle.size() == 2);
  // Period-2 points of the logistic map: (b + 1 -+ sqrt((b-3)(b+1))) / (2b).
  const double b = 3.2;
  const double root = std::sqrt((b - 3) * (b + 1));
  CHECK(two.cycle[0] == doctest::Approx((b + 1 - root) / (2 * b)).epsilon(1e-6));
  CHECK(two.cycle[1] == doctest::Approx((b + 1 + root) / (2 * b)).epsilon(1e-6));

  const auto slow = simulate_difference(1.049432, 0.01, 10000);
  const auto s = summarize_orbit(slow);
  CHECK(s.behavior == OrbitBehavior::kFixedPoint);
  CHECK(s.monotone);
  CHECK(slow.back() == doctest::Approx(1 - 1 / 1.049432).epsilon(1e-9));

  CHECK(summarize_orbit(simulate_difference(3.5, 0.3, 5000)).behavior == OrbitBehavior::kOther);
  CHECK_THROWS_AS(simulate_difference(2, 0.0, 10), Error);
  CHECK_THROWS_AS(simulate_difference(2, 0.5, 0), Error);
}

TEST_CASE("classifier agrees with orbit behavior on the sweep") {
  for (double b : {1.1, 1.5, 1.9, 2.2, 2.8, 3.05, 3.2, 3.5, 4.0}) {
    CAPTURE(b);
    const auto summary = summarize_orbit(simulate_difference(b, 0.3, 20000), 1e-9);
    switch (classify_stability(b)) {
      case StabilityClass::kLargeNeighborhoodStable:
      case StabilityClass::kNearEquilibriumStable:
        CHECK(summary.behavior == OrbitBehavior::kFixedPoint);
        CHECK(summary.cycle[0] == doctest::Approx(1 - 1 / b).epsilon(1e-9));
        break;
      case StabilityClass::kPeriodTwoOscillation:
        CHECK(summary.behavior == OrbitBehavior::kPeriodTwo);
        break;
      case StabilityClass::kUnstable:
        CHECK(summary.behavior == OrbitBehavior::kOther);
        break;
      case StabilityClass::kOutOfRange:
        FAIL("sweep value outside every band");
    }
  }
}
