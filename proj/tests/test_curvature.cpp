#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fractrend/curvature.hpp"
#include "fractrend/error.hpp"
#include "fractrend/random.hpp"
#include "oracles.hpp"
#include "reference_models.hpp"

using namespace fractrend;

namespace {

Segment exp_seg(double a, double b, double t0, double t1) {
  return {SegmentKind::kExponential, t0, t1, a, b};
}

PiecewiseModel shifted(const PiecewiseModel& m, double dt) {
  std::vector<Segment> out;
  for (auto s : m.segments()) {
    // Same curve relabeled: P'(t) = P(t - dt).
    if (s.kind == SegmentKind::kExponential) {
      s.a *= std::pow(s.b, -dt);
    } else {
      s.a -= s.b * dt;
    }
    s.t_start += dt;
    s.t_end += dt;
    out.push_back(s);
  }
  return PiecewiseModel(out);
}

}  // namespace

TEST_CASE("pointwise curvature") {
  CHECK(pointwise_curvature(exp_seg(1, std::numbers::e, -1, 1), 0.0) ==
        doctest::Approx(1.0 / std::pow(2.0, 1.5)).epsilon(1e-14));
  CHECK(pointwise_curvature({SegmentKind::kLinear, 0, 10, 3, -7}, 4.0) == 0.0);
  CHECK(pointwise_curvature(exp_seg(5, 1.0, 0, 10), 4.0) == 0.0);
  CHECK_THROWS_AS(pointwise_curvature(exp_seg(1, 2, 0, 1), 1.5), Error);
}

TEST_CASE("reduced formula equals the cross-product form") {
  SplitMix64 rng(606);
  for (int i = 0; i < 1000; ++i) {
    const double a = std::exp(rng.uniform(-5, 5));
    const double b = std::exp(rng.uniform(-1, 1));
    const double t = rng.uniform(-3, 3);
    const auto seg = exp_seg(a, b, -3, 3);
    CHECK(std::abs(pointwise_curvature(seg, t) - oracle::exp_curve_curvature(a, b, t)) <= 1e-10);
    CHECK(pointwise_curvature(seg, t) >= 0.0);
  }
}

TEST_CASE("Simpson average agrees with a dense trapezoid") {
  const auto seg = exp_seg(1, std::numbers::e, 0, 1);
  const double simpson = average_curvature(seg, 0.0, 1.0);
  const double trap = oracle::trapezoid(
      [&](double t) { return oracle::exp_curve_curvature(1, std::numbers::e, t); }, 0, 1, 1000000);
  CHECK(std::abs(simpson - trap) <= 1e-8 * trap);
}

TEST_CASE("average curvature edge cases") {
  CHECK(average_curvature({SegmentKind::kLinear, 0, 10, 1, 2}) == 0.0);
  const auto seg = exp_seg(1, 2, 0, 4);
  CHECK_THROWS_AS(average_curvature(seg, 2, 1), Error);
  CHECK_THROWS_AS(average_curvature(seg, -1, 1), Error);
  CHECK_THROWS_AS(average_curvature(seg, 0, 1, 3), Error);
  CHECK_THROWS_AS(average_curvature(seg, 0, 1, 0), Error);
}

TEST_CASE("quadrature is converged on the reference segments") {
  for (const auto& m : {reference::boston(), reference::manhattan()}) {
    for (const auto& s : m.segments()) {
      if (s.kind == SegmentKind::kLinear) continue;
      const double half = average_curvature(s, kDefaultPanels / 2);
      const double base = average_curvature(s, kDefaultPanels);
      const double twice = average_curvature(s, kDefaultPanels * 2);
      CHECK(std::abs(twice - base) <= 1e-9 * base);
      CHECK(std::abs(half - base) <= 1e-9 * base);
    }
  }
}

TEST_CASE("alpha ratios") {
  const PiecewiseModel twins({exp_seg(1, 1.1, 0, 10), exp_seg(std::pow(1.1, -20), 1.1, 20, 30)});
  const auto r = alpha_ratios(twins);
  REQUIRE(r.size() == 1);
  CHECK(r[0].index == 2);
  CHECK(r[0].alpha == doctest::Approx(1.0).epsilon(1e-12));

  // Linear periods are bridged.
  const auto boston = alpha_ratios(reference::boston());
  REQUIRE(boston.size() == 3);
  CHECK(boston[0].index == 2);
  CHECK(boston[1].index == 3);
  CHECK(boston[2].index == 5);
  CHECK(boston[2].numerator_period == 3);

  CHECK_THROWS_AS(alpha_ratios(PiecewiseModel({exp_seg(1, 1.1, 0, 10)})), Error);
  const PiecewiseModel flat_tail({exp_seg(1, 1.1, 0, 10), exp_seg(1, 1.0, 20, 30)});
  try {
    alpha_ratios(flat_tail);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
  }
}

TEST_CASE("alpha is invariant under a shift of the calendar origin") {
  for (const auto& m : {reference::boston(), reference::manhattan()}) {
    const auto base = alpha_ratios(m);
    for (double dt : {-1700.0, -37.5, 250.0}) {
      const auto moved = alpha_ratios(shifted(m, dt));
      for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(moved[i].alpha == doctest::Approx(base[i].alpha).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("similarity comparison") {
  const auto b = reference::boston();
  const auto m = reference::manhattan();

  const auto self = compare_similarity(b, b, 1e-6);
  CHECK(self.similar);
  for (const auto& e : self.entries) CHECK(e.log_ratio == 0.0);

  const auto ab = compare_similarity(b, m, 1.0);
  const auto ba = compare_similarity(m, b, 1.0);
  REQUIRE(ab.entries.size() == 3);
  CHECK(ab.entries[0].similar);
  CHECK_FALSE(ab.entries[1].similar);
  CHECK(ab.entries[2].similar);
  CHECK_FALSE(ab.similar);
  for (std::size_t i = 0; i < ab.entries.size(); ++i) {
    CHECK(ab.entries[i].similar == ba.entries[i].similar);
    CHECK(ab.entries[i].log_ratio == doctest::Approx(ba.entries[i].log_ratio));
  }

  const PiecewiseModel three({exp_seg(1, 1.1, 0, 10), exp_seg(1, 1.2, 20, 30),
                              exp_seg(1, 1.05, 40, 50)});
  CHECK_THROWS_AS(compare_similarity(b, three, 1.0), Error);
  CHECK_THROWS_AS(compare_similarity(b, b, 0.0), Error);
}
