#pragma once

// Talagrand μ-stability diagnostics under the uniform coin-flip measure on
// Cantor space.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccslab/bitseq.hpp"
#include "ccslab/families.hpp"

namespace ccslab {

/// numerator / 2^exponent, kept in lowest terms.
struct DyadicRational {
  std::uint64_t numerator = 0;
  unsigned exponent = 0;

  double value() const;
  std::string to_string() const;
  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
};

/// Finite union of cylinders [w]. Stored canonically: no generator extends
/// another and sibling pairs w⌢0, w⌢1 are merged into w, so the generators
/// are disjoint and the representation of a set is unique.
class CylinderSet {
 public:
  /// The empty set.
  CylinderSet() = default;
  explicit CylinderSet(std::vector<BinaryWord> generators);

  static CylinderSet full();
  /// "full", "empty", or comma-separated words such as "0,11".
  static CylinderSet parse(std::string_view text);

  const std::vector<BinaryWord>& generators() const noexcept { return generators_; }
  bool contains(const CantorPoint& x) const;
  bool contains_cell(const BinaryWord& cell) const;
  std::size_t max_length() const;
  std::string to_string() const;

  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;

 private:
  std::vector<BinaryWord> generators_;
};

DyadicRational cyl_measure(const CylinderSet& e);

/// True iff some f in A satisfies f(x_{2i}) <= a and f(x_{2i+1}) >= b for all
/// i < k, where the tuple has 2k entries. Throws CutError if a >= b and
/// std::invalid_argument for an odd tuple length.
bool dk_member(const std::vector<CantorFunction>& family, const std::vector<CantorPoint>& tuple, double a, double b);

struct DkEstimate {
  std::size_t k = 1;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> exact;
  /// μ(E)^{2k}
  double threshold = 1.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Independent sampling streams; the merged estimate does not depend on how
/// they are scheduled.
inline constexpr std::size_t kSamplingStreams = 8;
/// Random bits drawn for functions without a finite decision depth.
inline constexpr std::size_t kFallbackSampleDepth = 48;
/// Largest cell depth and family size handled by the exact computation.
inline constexpr std::size_t kExactMaxDepth = 20;
inline constexpr std::size_t kExactMaxFunctions = 64;

/// μ^{2k}(D_k(A, E, a, b) ∩ E^{2k}) by cell enumeration, or nullopt when A
/// has a member without finite decision depth or exceeds the exact limits.
std::optional<double> exact_dk(const std::vector<CantorFunction>& family, const CylinderSet& e, double a, double b,
                               std::size_t k);

/// Monte Carlo estimate of μ^{2k}(D_k ∩ E^{2k}) from n_samples tuples drawn
/// uniformly from E^{2k}, plus the exact value when available.
/// Throws EmptySetError if μ(E) = 0, CutError if a >= b.
DkEstimate estimate_dk(const std::vector<CantorFunction>& family, const CylinderSet& e, double a, double b,
                       std::size_t k, std::size_t n_samples, std::uint64_t seed);

struct StabilityVerdict {
  bool stable = false;
  /// Witness k when stable, otherwise k_max.
  std::size_t k = 0;
  std::vector<DkEstimate> estimates;

  /// "StableWitness(k)" or "NoWitnessUpTo(k_max)".
  std::string to_string() const;
};

/// Smallest k <= k_max with exact < μ(E)^{2k} (when exact is available) or
/// estimate + 3·std_error < μ(E)^{2k}.
StabilityVerdict stability_verdict(const std::vector<CantorFunction>& family, const CylinderSet& e, double a,
                                   double b, std::size_t k_max, std::size_t n_samples, std::uint64_t seed);

}  // namespace ccslab
