#include <doctest.h>

#include <cmath>
#include <random>

#include "ccslab/errors.hpp"
#include "ccslab/limits.hpp"
#include "unit/support.hpp"

using namespace ccslab;
using testing_support::random_point;
using testing_support::random_word;

namespace {

CantorPoint pt(const char* text) { return CantorPoint::parse(text); }

const CantorPoint kZeros = CantorPoint::zeros();
const CantorPoint kOnes = CantorPoint::ones();

// Sample of points whose distinguishing prefix has length <= 10.
std::vector<CantorPoint> short_points(std::mt19937_64& rng, std::size_t count) {
  std::vector<CantorPoint> xs;
  for (std::size_t i = 0; i < count; ++i) xs.push_back(random_point(rng, 10, 3));
  return xs;
}

std::size_t stabilization_bound(const CantorPoint& x, const CantorPoint& a) {
  const auto m = x.first_difference(a);
  return m ? *m + 1 : 0;
}

}  // namespace

TEST_CASE("approximant examples") {
  CHECK(threshold_upper_approximant(CantorPoint::alternating(), 2) == BinaryWord{0, 1, 1});
  CHECK(threshold_upper_approximant(kZeros, 0) == BinaryWord{1});
  CHECK(threshold_upper_approximant(kZeros, 3) == BinaryWord{0, 0, 0, 1});
  CHECK_THROWS_AS(threshold_upper_approximant(kOnes, 1), TargetIsOnes);

  CHECK(threshold_lower_approximant(pt("1(0)"), 2) == BinaryWord{0, 1, 1});
  CHECK(threshold_lower_approximant(CantorPoint::alternating(), 1) == BinaryWord{0, 0});
  CHECK(threshold_lower_approximant(CantorPoint::alternating(), 2) == BinaryWord{0, 1, 0, 0});
  CHECK(threshold_lower_approximant(CantorPoint::alternating(), 0) == BinaryWord{0, 0});
  CHECK_THROWS_AS(threshold_lower_approximant(kZeros, 1), TargetIsZeros);

  CHECK(delta_approximant(CantorPoint::alternating(), 4) == BinaryWord{0, 1, 0, 1});
  CHECK(delta_approximant(pt("0110(1)"), 0).empty());
  CHECK(delta_approximant(kOnes, 2) == BinaryWord{1, 1});

  CHECK(zero_approximant(0) == BinaryWord{0});
  CHECK(zero_approximant(2) == BinaryWord{1, 1, 0});
  CHECK(zero_approximant(5) == BinaryWord{1, 1, 1, 1, 1, 0});
}

TEST_CASE("sqrt deep values") {
  CHECK(sqrt_deep_value(4.0, ExtComplex(3.0)) == ExtComplex(2.0));
  CHECK(sqrt_deep_value(4.0, ExtComplex(-3.0)) == ExtComplex(-2.0));
  CHECK(sqrt_deep_value(4.0, ExtComplex(0.0)).is_infinity());
  CHECK(sqrt_deep_value(4.0, ExtComplex::infinity()).is_infinity());
  CHECK_THROWS_AS(sqrt_deep_value(-1.0, ExtComplex(1.0)), std::invalid_argument);
}

TEST_CASE("pointwise limit examples") {
  const auto a = CantorPoint::alternating();
  const auto r = pointwise_limit(delta_sequence(a), a, 16);
  CHECK(r.status == LimitStatus::Stabilized);
  CHECK(r.stabilization_index == 0);
  CHECK(std::get<CantorPoint>(*r.value) == kOnes);

  const auto osc = pointwise_limit(newton_iterates(Polynomial::parse("z^3-2z+2")), ExtComplex(0.0), 20, 1e-12);
  CHECK(osc.status == LimitStatus::Oscillating);
  CHECK(osc.period == std::optional<std::size_t>(2));
  CHECK_FALSE(osc.value.has_value());

  const auto sq = pointwise_limit(newton_iterates(Polynomial::parse("x^2-2")), ExtComplex(1.0), 20, 1e-12);
  CHECK(sq.status == LimitStatus::Stabilized);
  CHECK(std::abs(std::get<ExtComplex>(*sq.value).value() - std::sqrt(2.0)) < 1e-12);
  CHECK(sq.stabilization_index <= sq.trace_length);
}

TEST_CASE("trace classification") {
  std::vector<State> ramp;
  for (int i = 0; i < 10; ++i) ramp.emplace_back(ExtComplex(static_cast<double>(i)));
  CHECK(classify_trace(ramp, 1e-12).status == LimitStatus::BudgetExhausted);
  std::vector<State> three;
  for (int i = 0; i < 12; ++i) three.emplace_back(ExtComplex(static_cast<double>(i % 3)));
  const auto r = classify_trace(three, 1e-12);
  CHECK(r.status == LimitStatus::Oscillating);
  CHECK(r.period == std::optional<std::size_t>(3));
  CHECK(classify_trace({State(kOnes)}).status == LimitStatus::BudgetExhausted);
  CHECK_THROWS_AS(pointwise_limit(zero_sequence(), kOnes, 0), std::invalid_argument);
}

TEST_CASE("property: upper thresholds realize the non-strict cut") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 60; ++t) {
    auto a = random_point(rng, 6, 3);
    if (a.is_ones()) continue;
    for (const auto& x : short_points(rng, 40)) {
      const auto r = pointwise_limit(upper_threshold_sequence(a), x, 40);
      REQUIRE(r.status == LimitStatus::Stabilized);
      CHECK(std::get<CantorPoint>(*r.value) == (x <= a ? kOnes : kZeros));
      CHECK(r.stabilization_index <= stabilization_bound(x, a));
    }
  }
}

TEST_CASE("property: lower thresholds realize the strict cut") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 60; ++t) {
    auto a = random_point(rng, 6, 3);
    if (a.is_zeros()) continue;
    for (const auto& x : short_points(rng, 40)) {
      const auto r = pointwise_limit(lower_threshold_sequence(a), x, 40);
      REQUIRE(r.status == LimitStatus::Stabilized);
      CHECK(std::get<CantorPoint>(*r.value) == (x < a ? kOnes : kZeros));
      CHECK(r.stabilization_index <= stabilization_bound(x, a));
    }
  }
}

TEST_CASE("property: prefix tests realize delta and the zero map") {
  std::mt19937_64 rng(57);
  for (int t = 0; t < 60; ++t) {
    const auto a = random_point(rng, 6, 3);
    auto xs = short_points(rng, 40);
    xs.push_back(a);
    for (const auto& x : xs) {
      const auto r = pointwise_limit(delta_sequence(a), x, 40);
      REQUIRE(r.status == LimitStatus::Stabilized);
      CHECK(std::get<CantorPoint>(*r.value) == (x == a ? kOnes : kZeros));
      CHECK(r.stabilization_index <= stabilization_bound(x, a));

      if (x.is_ones()) continue;
      const auto z = pointwise_limit(zero_sequence(), x, 40);
      REQUIRE(z.status == LimitStatus::Stabilized);
      CHECK(std::get<CantorPoint>(*z.value) == kZeros);
      std::size_t first_zero = 0;
      while (x.bit_at(first_zero) == 1) ++first_zero;
      CHECK(z.stabilization_index <= first_zero + 1);
    }
  }
}

TEST_CASE("property: Newton square roots agree with the deep value") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> mag(-6.0, 6.0);
  for (double a : {2.0, 3.0, 4.0, 10.0}) {
    const auto seq = newton_iterates(Polynomial({Complex(-a), 0.0, 1.0}));
    for (int t = 0; t < 30; ++t) {
      const double x = (rng() % 2 == 0 ? 1.0 : -1.0) * std::pow(10.0, mag(rng));
      const auto r = pointwise_limit(seq, ExtComplex(x), 80, 1e-12);
      REQUIRE(r.status == LimitStatus::Stabilized);
      const auto want = sqrt_deep_value(a, ExtComplex(x)).value();
      CHECK(std::abs(std::get<ExtComplex>(*r.value).value() - want) < 1e-10);
    }
  }
}

TEST_CASE("property: iterate_limit matches the power sequence") {
  const auto wild = Transition::newton(Polynomial::parse("z^3-2z+2"));
  const auto seq = newton_iterates(Polynomial::parse("z^3-2z+2"));
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int t = 0; t < 40; ++t) {
    const ExtComplex z(coord(rng), coord(rng));
    const auto a = iterate_limit(wild, z, 30, 1e-12);
    const auto b = pointwise_limit(seq, z, 30, 1e-12);
    CHECK(a.status == b.status);
    CHECK(a.stabilization_index == b.stabilization_index);
    CHECK(a.period == b.period);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i] == b.trace[i]);
  }
  const auto gate = Transition::threshold(BinaryWord{0, 1});
  const auto x = CantorPoint::parse("1(0)");
  CHECK(iterate_limit(gate, x, 5).trace == pointwise_limit([&](std::size_t n) { return power(gate, n); }, x, 5).trace);
  CHECK_THROWS_AS(iterate_limit(gate, x, 0), std::invalid_argument);
}
