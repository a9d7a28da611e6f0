#include <doctest.h>

#include <random>

#include "ccslab/errors.hpp"
#include "ccslab/families.hpp"
#include "ccslab/limits.hpp"
#include "ccslab/transitions.hpp"
#include "unit/support.hpp"

using namespace ccslab;
using testing_support::random_point;

namespace {

CantorPoint pt(const char* text) { return CantorPoint::parse(text); }

const FamilyMember& member(const std::vector<FamilyMember>& fam, const BinaryWord& t) {
  for (const auto& m : fam) {
    if (m.label == t) return m;
  }
  throw std::out_of_range("no member " + t.to_string());
}

}  // namespace

TEST_CASE("identity subtree") {
  const auto s1 = identity_subtree(1);
  CHECK(s1.nodes().size() == 3);
  CHECK(s1.node(BinaryWord{}).empty());
  CHECK(s1.node(BinaryWord{0}) == BinaryWord{0});
  CHECK(s1.node(BinaryWord{1}) == BinaryWord{1});
  CHECK(identity_subtree(0).nodes().size() == 1);
  for (std::size_t d = 0; d <= 8; ++d) {
    const auto s = identity_subtree(d);
    CHECK(s.is_order_preserving());
    CHECK(s.is_regular());
    if (d <= 5) CHECK(s.is_meet_preserving());
  }
  // ε⌢0^∞ and 0⌢0^∞ coincide, so the identity tree has repeated tails.
  CHECK_FALSE(identity_subtree(2).has_distinct_tails());
  CHECK_THROWS_AS(s1.node(BinaryWord{0, 1}), DepthError);
}

TEST_CASE("spaced subtree") {
  const auto s = spaced_subtree(1, 2);
  CHECK(s.node(BinaryWord{}).empty());
  CHECK(s.node(BinaryWord{0}) == BinaryWord{0, 0});
  CHECK(s.node(BinaryWord{1}) == BinaryWord{1, 0});
  CHECK(spaced_subtree(4, 1).nodes() == identity_subtree(4).nodes());
  for (std::size_t d = 0; d <= 6; ++d) {
    const auto sp = spaced_subtree(d, 2);
    CHECK(sp.is_order_preserving());
    CHECK(sp.is_regular());
    // Exhaustive: comparable index words map to comparable nodes, and the
    // lexicographic order of nodes follows that of the index words.
    for (const auto& [t, st] : sp.nodes()) {
      for (const auto& [u, su] : sp.nodes()) {
        if (t.is_prefix_of(u)) CHECK(st.is_prefix_of(su));
        if (d <= 4) CHECK(sp.node(meet(t, u)) == meet(st, su));
      }
    }
  }
  CHECK(spaced_subtree(3, 3).level_length(2) == 6);
  CHECK_THROWS_AS(spaced_subtree(2, 0), std::invalid_argument);
}

TEST_CASE("alternating subtree satisfies every axiom") {
  for (std::size_t d = 0; d <= 5; ++d) {
    const auto s = alternating_subtree(d);
    CHECK(s.is_order_preserving());
    CHECK(s.is_meet_preserving());
    CHECK(s.is_regular());
    CHECK(s.has_distinct_tails());
  }
}

TEST_CASE("subtree constructor rejects broken trees") {
  std::map<BinaryWord, BinaryWord> bad{{BinaryWord{}, BinaryWord{}}, {BinaryWord{0}, BinaryWord{1}},
                                       {BinaryWord{1}, BinaryWord{0}}};
  CHECK_THROWS_AS(DyadicSubtree(1, bad), std::invalid_argument);
  std::map<BinaryWord, BinaryWord> ragged{{BinaryWord{}, BinaryWord{}}, {BinaryWord{0}, BinaryWord{0}},
                                          {BinaryWord{1}, BinaryWord{1, 1}}};
  CHECK_THROWS_AS(DyadicSubtree(1, ragged), std::invalid_argument);
  std::map<BinaryWord, BinaryWord> missing{{BinaryWord{}, BinaryWord{}}, {BinaryWord{0}, BinaryWord{0}}};
  CHECK_THROWS_AS(DyadicSubtree(1, missing), std::invalid_argument);
}

TEST_CASE("composed subtrees") {
  const auto c = compose_subtrees(spaced_subtree(4, 2), spaced_subtree(2, 2));
  CHECK(c.node(BinaryWord{1, 1}) == BinaryWord{1, 0, 0, 0, 1, 0, 0, 0});
  CHECK(c.is_regular());
  CHECK_THROWS_AS(compose_subtrees(identity_subtree(2), spaced_subtree(2, 2)), DepthError);
}

TEST_CASE("generate_family examples") {
  const auto id = identity_subtree(3);
  const auto d5 = generate_family(FamilyKind::D5, id, 3);
  CHECK(d5.size() == 15);
  CHECK(member(d5, BinaryWord{0, 1}).evaluate(SampleState::point(CantorPoint::alternating())) == 1.0);
  const auto d1 = generate_family(FamilyKind::D1, id, 3);
  CHECK(member(d1, BinaryWord{1, 0}).evaluate(SampleState::point(pt("10(1)"))) == doctest::Approx(1.0 / 3.0));
  CHECK(member(d1, BinaryWord{1, 0}).evaluate(SampleState::point(pt("11(1)"))) == 0.0);
  const auto ht = generate_family(FamilyKind::Ht, id, 3);
  CHECK(member(ht, BinaryWord{1}).evaluate(SampleState::point(CantorPoint::zeros())) == 0.0);
  CHECK(member(ht, BinaryWord{1}).evaluate(SampleState::point(pt("1(0)"))) == 0.5);
  CHECK(member(ht, BinaryWord{0}).evaluate(SampleState::point(pt("1(0)"))) == 1.0);
  const auto d2 = generate_family(FamilyKind::D2, id, 3);
  CHECK(member(d2, BinaryWord{1, 0, 1}).evaluate(SampleState::coordinate(2)) == 1.0);
  CHECK(member(d2, BinaryWord{1, 0, 1}).evaluate(SampleState::coordinate(7)) == 0.0);
  CHECK_THROWS_AS(member(d2, BinaryWord{1}).evaluate(SampleState::point(CantorPoint::zeros())),
                  std::invalid_argument);
  const auto d6 = generate_family(FamilyKind::D6, id, 2);
  CHECK(member(d6, BinaryWord{1}).evaluate(SampleState::point(pt("1(0)"), 0)) == 1.0);
  CHECK(member(d6, BinaryWord{1}).evaluate(SampleState::coordinate(0, 1)) == 1.0);
  const auto d7 = generate_family(FamilyKind::D7, id, 2);
  CHECK(member(d7, BinaryWord{1}).evaluate(SampleState::point(pt("01(1)"), 1)) == 1.0);
  CHECK(member(d7, BinaryWord{1}).evaluate(SampleState::point(pt("11(0)"), 1)) == 0.0);
  CHECK_THROWS_AS(generate_family(FamilyKind::D5, id, 4), DepthError);
}

TEST_CASE("cut identities at the cut point") {
  const auto a = pt("01(0)");
  CHECK(cut_plus(a, a) == 1.0);
  CHECK(cut_minus(a, a) == 0.0);
  CHECK(cut_plus(a, CantorPoint::zeros()) == 1.0);
  CHECK(cut_minus(a, CantorPoint::ones()) == 0.0);
}

TEST_CASE("evaluate_family examples") {
  std::vector<SampleState> sample;
  for (const auto& w : words_of_length(3)) sample.push_back(SampleState::point(CantorPoint::with_tail(w, 0)));
  const auto m = evaluate_family(generate_family(FamilyKind::D5, identity_subtree(2), 2), sample, "D5");
  CHECK(m.num_functions() == 7);
  CHECK(m.num_points() == 8);
  for (std::size_t f = 0; f < 7; ++f) {
    for (std::size_t x = 0; x < 8; ++x) CHECK((m(f, x) == 0.0 || m(f, x) == 1.0));
  }
  CHECK(m.functions()[0] == "D5[]");
  CHECK(evaluate_family({}, sample).num_functions() == 0);
  const std::vector<SampleState> two{SampleState::point(CantorPoint::zeros()), SampleState::point(CantorPoint::ones())};
  const auto d3 = evaluate_family(generate_family(FamilyKind::D3, identity_subtree(1), 1), two);
  // f⁺_a(x) = 1 iff x <= a; a ranges over 0^∞, 0^∞, 1⌢0^∞.
  CHECK(d3(0, 0) == 1.0);
  CHECK(d3(0, 1) == 0.0);
  CHECK(d3(2, 0) == 1.0);
  CHECK(d3(2, 1) == 0.0);
}

TEST_CASE("canonical samples") {
  CHECK(canonical_sample(FamilyKind::D5, identity_subtree(4), 4).size() == 65);
  CHECK(canonical_sample(FamilyKind::D5, spaced_subtree(4, 2), 4).size() == 1025);
  CHECK(canonical_sample(FamilyKind::D2, identity_subtree(4), 4).size() == 6);
  CHECK(canonical_sample(FamilyKind::D6, identity_subtree(2), 2).size() == 17 + 4);
  CHECK(canonical_sample(FamilyKind::D7, identity_subtree(2), 2).size() == 34);
}

TEST_CASE("structure check examples") {
  const auto d5 = limit_structure_check(FamilyKind::D5, identity_subtree(4), 4);
  CHECK(d5.along_branch);
  CHECK(d5.discreteness);
  CHECK(d5.passed());
  CHECK_FALSE(d5.cut_identities.has_value());
  const auto d1 = limit_structure_check(FamilyKind::D1, identity_subtree(4), 4);
  CHECK(d1.passed());
  CHECK(d1.gap == doctest::Approx(0.2));
  CHECK(d1.min_antichain_distance == doctest::Approx(0.2));
  const auto d3 = limit_structure_check(FamilyKind::D3, identity_subtree(4), 4);
  CHECK(d3.cut_identities == std::optional<bool>(true));
  CHECK(d3.passed());
  CHECK_THROWS_AS(limit_structure_check(FamilyKind::D5, identity_subtree(4), 1), DepthError);
}

TEST_CASE("property: structure outcomes agree across subtrees") {
  for (auto kind : {FamilyKind::D1, FamilyKind::D2, FamilyKind::D3, FamilyKind::D4, FamilyKind::D5, FamilyKind::D6,
                    FamilyKind::D7, FamilyKind::Ht}) {
    const auto a = limit_structure_check(kind, identity_subtree(3), 3);
    for (const auto& sub : {spaced_subtree(3, 2), alternating_subtree(3), spaced_subtree(3, 3)}) {
      const auto b = limit_structure_check(kind, sub, 3);
      CHECK(a.along_branch == b.along_branch);
      CHECK(a.discreteness == b.discreteness);
      CHECK(a.cut_identities == b.cut_identities);
      CHECK(b.min_antichain_distance >= b.gap - 1e-9);
      CHECK(b.passed());
    }
  }
}

TEST_CASE("property: D5 agrees with the prefix-test structure") {
  std::mt19937_64 rng(81);
  const auto fam = generate_family(FamilyKind::D5, identity_subtree(4), 4);
  for (int t = 0; t < 300; ++t) {
    const auto x = random_point(rng);
    for (const auto& m : fam) {
      const double p0 = prefix_test_apply(m.label, x).bit_at(0);
      CHECK(m.evaluate(SampleState::point(x)) == p0);
    }
  }
}

TEST_CASE("property: D3 agrees with threshold limits") {
  std::mt19937_64 rng(83);
  const auto fam = generate_family(FamilyKind::D3, identity_subtree(3), 3);
  for (const auto& m : fam) {
    const auto a = CantorPoint::with_tail(m.node, 0);
    for (int t = 0; t < 40; ++t) {
      const auto x = random_point(rng, 8, 3);
      const auto r = pointwise_limit(upper_threshold_sequence(a), x, 32);
      REQUIRE(r.status == LimitStatus::Stabilized);
      CHECK(m.evaluate(SampleState::point(x)) == std::get<CantorPoint>(*r.value).bit_at(0));
    }
  }
}

TEST_CASE("independence dimensions of depth-4 truncations") {
  const auto id = identity_subtree(4);
  auto dim = [&](FamilyKind k) {
    const auto m = evaluate_family(generate_family(k, id, 4), canonical_sample(k, id, 4));
    const auto r = independence_dimension(m, 0.25, 0.75, 6);
    if (r.witness) CHECK(ip_certificate_check(m, *r.witness, 0.25, 0.75));
    return r.dim;
  };
  CHECK(dim(FamilyKind::D5) >= 2);
  CHECK(dim(FamilyKind::D3) == 1);
  CHECK(dim(FamilyKind::D4) == 1);
}

TEST_CASE("feature families") {
  CHECK(threshold_features(2).size() == 7);
  CHECK(prefix_features(3).size() == 15);
  CHECK(delta_functions(3).size() == 8);
  const auto sp = spread_sample();
  REQUIRE(sp.size() == 12);
  CHECK(sp[0] == pt("000011(0)"));
  CHECK(sp[11] == pt("111010(0)"));
  CHECK(std::is_sorted(sp.begin(), sp.end()));
  CHECK_THROWS_AS(family_functions(FamilyKind::D2, identity_subtree(2), 2), std::invalid_argument);
  const auto fs = family_functions(FamilyKind::D5, identity_subtree(2), 2);
  CHECK(fs[1].decision_depth == 1);
  CHECK(parse_family_kind("ht") == FamilyKind::Ht);
  CHECK(to_string(FamilyKind::D7) == "D7");
  CHECK_THROWS_AS(parse_family_kind("D8"), std::invalid_argument);
}
