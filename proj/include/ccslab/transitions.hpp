#pragma once

// Transitions of the implemented computation structures and their
// composition semigroup.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccslab/bitseq.hpp"
#include "ccslab/polynomial.hpp"
#include "ccslab/states.hpp"

namespace ccslab {

enum class StateSpace { Cantor, Sphere };

std::string to_string(StateSpace space);

using State = std::variant<CantorPoint, ExtComplex>;

StateSpace space_of(const State& s);
std::string to_string(const State& s);

/// Finite values whose modulus exceeds this are identified with ∞.
inline constexpr double kInfinityCutoff = 1e150;

/// The Newton map z - p(z)/p'(z) of a polynomial, extended to the Riemann
/// sphere. p/p' is reduced by gcd(p, p') at construction so multiple roots
/// are removable singularities.
class NewtonMap {
 public:
  /// Throws DegreeError if p is constant.
  explicit NewtonMap(Polynomial p);

  ExtComplex operator()(const ExtComplex& z) const;

  const Polynomial& polynomial() const noexcept { return p_; }
  /// Reduced numerator p / gcd(p, p').
  const Polynomial& numerator() const noexcept { return num_; }
  /// Reduced denominator p' / gcd(p, p').
  const Polynomial& denominator() const noexcept { return den_; }

 private:
  Polynomial p_;
  Polynomial num_;
  Polynomial den_;
  ExtComplex at_infinity_;
};

/// 1^∞ if x|_{|w|} <= w lexicographically, else 0^∞.
CantorPoint threshold_apply(const BinaryWord& w, const CantorPoint& x);
/// 1^∞ if x extends w, else 0^∞.
CantorPoint prefix_test_apply(const BinaryWord& w, const CantorPoint& x);
/// 0^∞ below the cylinder [t], (01)^∞ on it, 1^∞ above it.
CantorPoint split_apply(const BinaryWord& t, const CantorPoint& x);

ExtComplex newton_step(const Polynomial& p, const ExtComplex& z);
/// [z0, N(z0), ..., N^n(z0)]
std::vector<ExtComplex> newton_orbit(const Polynomial& p, const ExtComplex& z0, std::size_t n);
std::vector<ExtComplex> newton_orbit(const NewtonMap& map, const ExtComplex& z0, std::size_t n);

/// An evaluable map on one of the two state spaces.
class Transition {
 public:
  struct Identity {
    StateSpace space;
  };
  struct Threshold {
    BinaryWord w;
  };
  struct PrefixTest {
    BinaryWord w;
  };
  struct Split {
    BinaryWord t;
  };
  struct ConstantPoint {
    CantorPoint c;
  };
  struct NewtonStep {
    std::shared_ptr<const NewtonMap> map;
  };
  /// Members in application order: chain.front() acts first.
  struct Composite {
    std::vector<Transition> chain;
  };
  using Kind = std::variant<Identity, Threshold, PrefixTest, Split, ConstantPoint, NewtonStep, Composite>;

  static Transition identity(StateSpace space);
  static Transition threshold(BinaryWord w);
  static Transition prefix_test(BinaryWord w);
  static Transition split(BinaryWord t);
  static Transition constant(CantorPoint c);
  static Transition newton(Polynomial p);
  static Transition newton(std::shared_ptr<const NewtonMap> map);

  const Kind& kind() const noexcept { return kind_; }
  StateSpace space() const noexcept { return space_; }

  /// Throws SpaceMismatch if the state lives in the other space.
  State apply(const State& x) const;
  CantorPoint apply(const CantorPoint& x) const;
  ExtComplex apply(const ExtComplex& z) const;

  /// Textual form accepted by parse_transition.
  std::string to_string() const;

 private:
  Transition(Kind kind, StateSpace space) : kind_(std::move(kind)), space_(space) {}
  friend Transition compose(const Transition& outer, const Transition& inner);
  friend Transition power(const Transition& f, std::size_t n);

  Kind kind_;
  StateSpace space_;
};

/// outer ∘ inner. Throws SpaceMismatch if the spaces differ.
Transition compose(const Transition& outer, const Transition& inner);
/// f composed with itself n times; identity for n = 0.
Transition power(const Transition& f, std::size_t n);

/// Parses `threshold:10`, `prefix:01`, `split:1`, `const:1(0)`,
/// `newton:z^3-2z+2`, `id:cantor`, `id:sphere` and `compose(f;g;...)`.
Transition parse_transition(std::string_view text);

}  // namespace ccslab
