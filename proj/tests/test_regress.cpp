#include <doctest.h>

#include <cmath>

#include "fractrend/error.hpp"
#include "fractrend/random.hpp"
#include "fractrend/regress.hpp"
#include "oracles.hpp"

using namespace fractrend;

TEST_CASE("ols on an exact line") {
  const std::vector<Point> pts{{0, 0}, {1, 2}, {2, 4}};
  const auto f = ols_fit(pts);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(0.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.stderr_slope == doctest::Approx(0.0));
}

TEST_CASE("ols on constant response defines r^2 = 1") {
  const std::vector<Point> pts{{0, 1}, {1, 1}, {2, 1}};
  const auto f = ols_fit(pts);
  CHECK(f.slope == doctest::Approx(0.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == 1.0);
}

TEST_CASE("ols on a tent: slope 0, intercept 1/3") {
  // By hand: mean x = 1, mean y = 1/3, Sxy = (-1)(-1/3) + 0 + (1)(-1/3) = 0.
  const std::vector<Point> pts{{0, 0}, {1, 1}, {2, 0}};
  const auto f = ols_fit(pts);
  CHECK(f.slope == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f.intercept == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(f.r_squared == doctest::Approx(0.0));
}

TEST_CASE("ols error paths") {
  CHECK_THROWS_AS(ols_fit(std::vector<Point>{{1, 1}}), Error);
  try {
    ols_fit(std::vector<Point>{{1, 1}, {1, 2}, {1, 3}});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
  }
}

TEST_CASE("LogLogSeries invariants") {
  CHECK_NOTHROW(LogLogSeries({{3, 0}, {2, 1}, {1, 2}}));
  CHECK_NOTHROW(LogLogSeries({{1, 0}, {2, 1}}));
  CHECK_THROWS_AS(LogLogSeries({{1, 0}}), Error);
  CHECK_THROWS_AS(LogLogSeries({{1, 0}, {2, 1}, {2, 3}}), Error);
  CHECK_THROWS_AS(LogLogSeries({{1, 0}, {2, NAN}}), Error);
}

TEST_CASE("ols properties on random data") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.next() % 20);
    std::vector<Point> pts;
    std::vector<std::array<double, 2>> raw;
    for (int i = 0; i < n; ++i) {
      const double x = i + rng.uniform(0.0, 0.5);
      const double y = rng.uniform(-5.0, 5.0);
      pts.push_back({x, y});
      raw.push_back({x, y});
    }
    const auto f = ols_fit(pts);

    CHECK(f.slope == doctest::Approx(oracle::naive_slope(raw)).epsilon(1e-9));
    CHECK(f.r_squared >= 0.0);
    CHECK(f.r_squared <= 1.0);

    // Residual orthogonality.
    double sr = 0.0, sxr = 0.0, scale = 0.0;
    for (const auto& p : pts) {
      const double r = p.y - f(p.x);
      sr += r;
      sxr += p.x * r;
      scale += std::abs(p.x * p.y) + std::abs(p.y);
    }
    CHECK(std::abs(sr) <= 1e-9 * scale);
    CHECK(std::abs(sxr) <= 1e-9 * scale);

    // Affine equivariance in y.
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-10.0, 10.0);
    std::vector<Point> moved;
    for (const auto& p : pts) moved.push_back({p.x, a * p.y + b});
    const auto g = ols_fit(moved);
    CHECK(g.slope == doctest::Approx(a * f.slope).epsilon(1e-9).scale(1.0));
    CHECK(g.intercept == doctest::Approx(a * f.intercept + b).epsilon(1e-9).scale(1.0));
  }
}
