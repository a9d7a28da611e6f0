#pragma once

// Computation-state structures: predicates, types, sizers and the two
// concrete state spaces (Cantor space and the extended complex plane).

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccslab/bitseq.hpp"

namespace ccslab {

/// A real-valued feature of states. Indexed families (the coordinate
/// projections P_n of Cantor space) carry an index.
struct PredicateId {
  std::string name;
  std::optional<std::size_t> index;

  static PredicateId projection(std::size_t n) { return {"P", n}; }

  std::string to_string() const;

  friend auto operator<=>(const PredicateId&, const PredicateId&) = default;
};

/// Finite restriction of a state's type to the predicates that were queried.
struct StateType {
  std::map<PredicateId, double> values;

  double at(const PredicateId& id) const { return values.at(id); }
};

/// Per-predicate magnitude bounds. Predicates without an explicit entry use
/// the default bound, so countable predicate families need no enumeration.
class Sizer {
 public:
  explicit Sizer(double default_bound = 1.0);
  Sizer(double default_bound, std::map<PredicateId, double> bounds);

  static Sizer uniform(double bound) { return Sizer(bound); }

  double bound(const PredicateId& id) const;
  Sizer with(const PredicateId& id, double bound) const;

 private:
  double default_bound_;
  std::map<PredicateId, double> bounds_;
};

/// True iff |v(P)| <= r(P) for every predicate carried by the type.
bool in_shard(const StateType& v, const Sizer& r);

/// A point of the extended complex plane: a finite complex number or ∞.
class ExtComplex {
 public:
  /// The origin.
  ExtComplex() = default;
  /// Throws std::invalid_argument for non-finite coordinates.
  ExtComplex(std::complex<double> z);  // NOLINT(google-explicit-constructor)
  ExtComplex(double re, double im = 0.0) : ExtComplex(std::complex<double>(re, im)) {}

  static ExtComplex infinity();
  /// "inf", a real number, or a+bi / a-bi / bi forms such as "1-0.5i".
  /// Throws ParseError.
  static ExtComplex parse(std::string_view text);

  bool is_infinity() const noexcept { return infinite_; }
  /// Throws std::logic_error when called on ∞.
  std::complex<double> value() const;

  std::string to_string() const;

  friend bool operator==(const ExtComplex&, const ExtComplex&) = default;

 private:
  std::complex<double> z_{};
  bool infinite_ = false;
};

/// Inverse stereographic projection onto the unit sphere: (P1, P2, P3).
std::array<double, 3> stereo_coords(const ExtComplex& z);

/// Euclidean distance between the stereographic images. Range [0, 2].
double chordal_distance(const ExtComplex& z, const ExtComplex& w);

/// Type of a Cantor point restricted to the given coordinate projections.
StateType cantor_type(const CantorPoint& x, const std::vector<PredicateId>& ids);
/// Type of a Cantor point on P_0 .. P_{n-1}.
StateType cantor_type(const CantorPoint& x, std::size_t n);

/// Type of a point of the Riemann sphere on the predicates P1, P2, P3.
StateType sphere_type(const ExtComplex& z);

}  // namespace ccslab
