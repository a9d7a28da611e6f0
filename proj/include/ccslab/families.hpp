#pragma once

// Generators for the seven minimal families D1..D7 and the h_t presentation
// of the extended Alexandroff duplicate of the split Cantor space, indexed
// by a regular dyadic subtree and truncated at finite depth.
//
// Cut functions follow the threshold-classifier convention:
//   f⁺_a(x) = 1 iff x <= a,   f⁻_a(x) = 1 iff x < a.

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccslab/bitseq.hpp"
#include "ccslab/tameness.hpp"

namespace ccslab {

enum class FamilyKind { D1, D2, D3, D4, D5, D6, D7, Ht };

std::string to_string(FamilyKind kind);
/// "D1".."D7", "Ht" (case-insensitive). Throws std::invalid_argument.
FamilyKind parse_family_kind(std::string_view name);

/// Map t ↦ s_t on all index words with |t| <= depth.
///
/// The constructor enforces the dyadic-subtree axioms: s_{t⌢i} extends
/// s_t⌢i (which makes the map order- and meet-preserving) and regularity
/// (|s_t| depends only on |t|). Throws std::invalid_argument otherwise.
class DyadicSubtree {
 public:
  DyadicSubtree(std::size_t depth, std::map<BinaryWord, BinaryWord> nodes);

  std::size_t depth() const noexcept { return depth_; }
  /// Throws DepthError if |t| > depth.
  const BinaryWord& node(const BinaryWord& t) const;
  /// |s_t| for any t with |t| = level.
  std::size_t level_length(std::size_t level) const;
  const std::map<BinaryWord, BinaryWord>& nodes() const noexcept { return nodes_; }

  bool is_order_preserving() const;
  bool is_meet_preserving() const;
  bool is_regular() const;
  /// s⌢0^∞ pairwise distinct and s⌢1^∞ pairwise distinct over all nodes.
  bool has_distinct_tails() const;

 private:
  std::size_t depth_;
  std::map<BinaryWord, BinaryWord> nodes_;
};

/// s_t = t.
DyadicSubtree identity_subtree(std::size_t depth);
/// s_t = t with (spacing - 1) zeros inserted after every bit.
DyadicSubtree spaced_subtree(std::size_t depth, std::size_t spacing);
/// s_t = t with every bit b replaced by b(1-b). Satisfies the distinct-tail
/// condition, unlike the two constructions above.
DyadicSubtree alternating_subtree(std::size_t depth);
/// t ↦ outer.node(inner.node(t)). Throws DepthError if outer is too shallow.
DyadicSubtree compose_subtrees(const DyadicSubtree& outer, const DyadicSubtree& inner);

/// A sample state of a family's domain: a Cantor point or a coordinate
/// index, tagged with the component of a disjoint union (D6, D7).
struct SampleState {
  int component = 0;
  std::variant<CantorPoint, std::size_t> at;

  static SampleState point(CantorPoint x, int component = 0) { return {component, std::move(x)}; }
  static SampleState coordinate(std::size_t n, int component = 0) { return {component, n}; }

  std::string to_string() const;
};

struct FamilyMember {
  BinaryWord label;  // index word t
  BinaryWord node;   // s_t
  std::function<double(const SampleState&)> evaluate;
};

// Building blocks.
double prefix_indicator(const BinaryWord& s, const CantorPoint& x);  // v_s
double cut_plus(const CantorPoint& a, const CantorPoint& x);         // f⁺_a
double cut_minus(const CantorPoint& a, const CantorPoint& x);        // f⁻_a
double split_step(const BinaryWord& s, const CantorPoint& x);        // h_s

/// One member per index word t with |t| <= depth, ordered by length then
/// lexicographically. Throws DepthError if depth exceeds the subtree.
std::vector<FamilyMember> generate_family(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth);

/// All 2^{L} points w⌢0^∞ with |w| = L, followed by 1^∞.
std::vector<CantorPoint> cylinder_representatives(std::size_t word_length);

/// Sample used by the structure checks: cylinder representatives at word
/// length level_length(depth) + 2, laid out over the family's domain.
std::vector<SampleState> canonical_sample(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth);

/// Member values over the sample. Row labels are "<family>[t]" when
/// `family_name` is given, otherwise the bare index word.
EvalMatrix evaluate_family(const std::vector<FamilyMember>& members, const std::vector<SampleState>& sample,
                           const std::string& family_name = "");

struct StructureReport {
  FamilyKind family = FamilyKind::D5;
  std::size_t depth = 0;
  std::size_t members = 0;
  std::size_t sample_size = 0;
  /// Along every branch, once a node separates a sample state from the
  /// branch point the member values at that state are frozen (and equal the
  /// δ-type limit for D1/D5).
  bool along_branch = true;
  std::size_t along_branch_failures = 0;
  /// Members at incomparable indices are at sup-distance >= gap - tol.
  bool discreteness = true;
  double min_antichain_distance = std::numeric_limits<double>::infinity();
  double gap = 1.0;
  /// One-sided cut identities (D3, D4, D7, Ht); absent for other families.
  std::optional<bool> cut_identities;

  bool passed() const { return along_branch && discreteness && cut_identities.value_or(true); }
};

/// Finite-scale structure checks on the canonical sample. Requires depth >= 2.
StructureReport limit_structure_check(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth,
                                      double tol = 1e-9);

// ---------------------------------------------------------------------------
// Real-valued functions on Cantor space used by the tameness and stability
// diagnostics.

inline constexpr std::size_t kUndecided = std::numeric_limits<std::size_t>::max();

struct CantorFunction {
  std::string label;
  std::function<double(const CantorPoint&)> f;
  /// The value depends only on the first decision_depth bits; kUndecided
  /// when no finite depth suffices.
  std::size_t decision_depth = kUndecided;
};

/// P_0 ∘ φ_w for all |w| <= depth (x ↦ 1 iff x|_{|w|} <= w).
std::vector<CantorFunction> threshold_features(std::size_t depth);
/// P_0 ∘ ψ_w for all |w| <= depth (cylinder indicators).
std::vector<CantorFunction> prefix_features(std::size_t depth);
/// v_w for the given words.
std::vector<CantorFunction> cylinder_functions(const std::vector<BinaryWord>& words);
/// δ_a for all a = w⌢0^∞ with |w| = depth.
std::vector<CantorFunction> delta_functions(std::size_t depth);
/// Point-domain members of a family (D1, D3, D4, D5, Ht) as functions.
std::vector<CantorFunction> family_functions(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth);

/// Twelve points w⌢0^∞ where w is the 6-bit binary form of 5i + 3.
std::vector<CantorPoint> spread_sample();

EvalMatrix evaluate_functions(const std::vector<CantorFunction>& functions, const std::vector<CantorPoint>& sample);

}  // namespace ccslab
