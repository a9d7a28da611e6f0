#include <doctest.h>

#include <algorithm>
#include <random>

#include "ccslab/errors.hpp"
#include "ccslab/polynomial.hpp"

using namespace ccslab;

namespace {

// Greedy matching distance between two root multisets.
double max_match_error(std::vector<Complex> got, const std::vector<Complex>& want) {
  double worst = 0.0;
  for (const auto& r : want) {
    auto best = std::min_element(got.begin(), got.end(),
                                 [&](const Complex& a, const Complex& b) { return std::abs(a - r) < std::abs(b - r); });
    worst = std::max(worst, std::abs(*best - r));
    got.erase(best);
  }
  return worst;
}

}  // namespace

TEST_CASE("parse and print") {
  const auto p = Polynomial::parse("z^3-2z+2");
  CHECK(p.degree() == 3);
  CHECK(p.coefficients() == std::vector<Complex>{2.0, -2.0, 0.0, 1.0});
  CHECK(p.to_string() == "z^3-2z+2");
  CHECK(Polynomial::parse("x^2 - 4").coefficients() == std::vector<Complex>{-4.0, 0.0, 1.0});
  CHECK(Polynomial::parse("3*z^2+0.5z").coefficients() == std::vector<Complex>{0.0, 0.5, 3.0});
  CHECK(Polynomial::parse("-z").coefficients() == std::vector<Complex>{0.0, -1.0});
  CHECK(Polynomial::parse("z^2+z^2").coefficients() == std::vector<Complex>{0.0, 0.0, 2.0});
  CHECK(Polynomial::parse("z-z").is_zero());
  CHECK_THROWS_AS(Polynomial::parse("z^"), ParseError);
  CHECK_THROWS_AS(Polynomial::parse("z^3-2y"), ParseError);
  try {
    Polynomial::parse("z^3-2y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("evaluation and derivative") {
  const auto p = Polynomial::parse("z^3-2z+2");
  CHECK(p(0.0) == Complex(2.0));
  CHECK(p(1.0) == Complex(1.0));
  CHECK(p.derivative().coefficients() == std::vector<Complex>{-2.0, 0.0, 3.0});
  const Complex z(0.3, -0.7);
  const Complex inv = 1.0 / z;
  CHECK(std::abs(p.eval_reversed(inv) * std::pow(z, 3) - p(z)) < 1e-12);
}

TEST_CASE("division and gcd") {
  const auto a = Polynomial::from_roots({1.0, 2.0, 3.0});
  const auto b = Polynomial::from_roots({2.0, 5.0});
  const auto [q, r] = a.divmod(b);
  for (const Complex z : {Complex(0.5), Complex(-1.0, 2.0), Complex(3.0, 0.1)}) {
    CHECK(std::abs(q(z) * b(z) + r(z) - a(z)) < 1e-9);
  }
  const auto g = poly_gcd(a, b);
  REQUIRE(g.degree() == 1);
  CHECK(std::abs(g(2.0)) < 1e-10);
  const auto sq = Polynomial::from_roots({1.0, 1.0, -2.0});
  const auto g2 = poly_gcd(sq, sq.derivative());
  REQUIRE(g2.degree() == 1);
  CHECK(std::abs(g2(1.0)) < 1e-9);
}

TEST_CASE("roots of the cubic examples") {
  const auto r = polynomial_roots(Polynomial::parse("z^3-1"));
  const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
  CHECK(max_match_error(r, {1.0, w, std::conj(w)}) < 1e-12);
  const auto s = polynomial_roots(Polynomial::parse("z^3-2z+2"));
  for (const auto& z : s) CHECK(std::abs(Polynomial::parse("z^3-2z+2")(z)) < 1e-12);
  CHECK_THROWS_AS(polynomial_roots(Polynomial::parse("5")), DegreeError);
}

TEST_CASE("property: roots recovered from random factorizations") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> deg(1, 7);
  for (int t = 0; t < 200; ++t) {
    std::vector<Complex> roots;
    const int d = deg(rng);
    for (int i = 0; i < d; ++i) roots.emplace_back(u(rng), u(rng));
    const auto p = Polynomial::from_roots(roots);
    CHECK(max_match_error(polynomial_roots(p), roots) < 1e-7);
  }
}
