#include "ccslab/transitions.hpp"

#include <cmath>

#include "ccslab/errors.hpp"

namespace ccslab {

std::string to_string(StateSpace space) {
  return space == StateSpace::Cantor ? "cantor" : "sphere";
}

StateSpace space_of(const State& s) {
  return std::holds_alternative<CantorPoint>(s) ? StateSpace::Cantor : StateSpace::Sphere;
}

std::string to_string(const State& s) {
  return std::visit([](const auto& v) { return v.to_string(); }, s);
}

namespace {

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  const bool invert = k < 0;
  for (int i = 0; i < std::abs(k); ++i) r *= z;
  return invert ? 1.0 / r : r;
}

ExtComplex finite_or_infinity(Complex w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > kInfinityCutoff) {
    return ExtComplex::infinity();
  }
  return ExtComplex(w);
}

}  // namespace

NewtonMap::NewtonMap(Polynomial p) : p_(std::move(p)) {
  if (p_.degree() < 1) throw DegreeError("Newton map needs a non-constant polynomial");
  const Polynomial dp = p_.derivative();
  const Polynomial g = poly_gcd(p_, dp);
  num_ = p_.divmod(g).first;
  den_ = dp.divmod(g).first;

  // N = (z*den - num) / den as a rational function; its value at ∞ follows
  // from the degrees.
  std::vector<Complex> zden(den_.coefficients().size() + 1);
  for (std::size_t i = 0; i < den_.coefficients().size(); ++i) zden[i + 1] = den_.coefficients()[i];
  std::vector<Complex> a = zden;
  if (a.size() < num_.coefficients().size()) a.resize(num_.coefficients().size());
  for (std::size_t i = 0; i < num_.coefficients().size(); ++i) a[i] -= num_.coefficients()[i];
  const Polynomial top(std::move(a));
  if (top.degree() > den_.degree()) {
    at_infinity_ = ExtComplex::infinity();
  } else if (top.degree() == den_.degree()) {
    at_infinity_ = finite_or_infinity(top.leading() / den_.leading());
  } else {
    at_infinity_ = ExtComplex(0.0);
  }
}

ExtComplex NewtonMap::operator()(const ExtComplex& z) const {
  if (z.is_infinity()) return at_infinity_;
  const Complex v = z.value();
  Complex ratio;
  if (std::abs(v) <= 1.0) {
    const Complex n = num_(v);
    const Complex d = den_(v);
    if (d == Complex{}) return n == Complex{} ? z : ExtComplex::infinity();
    ratio = n / d;
  } else {
    const Complex inv = 1.0 / v;
    const Complex n = num_.eval_reversed(inv);
    const Complex d = den_.eval_reversed(inv);
    if (d == Complex{}) return n == Complex{} ? z : ExtComplex::infinity();
    ratio = (n / d) * ipow(v, num_.degree() - den_.degree());
  }
  return finite_or_infinity(v - ratio);
}

CantorPoint threshold_apply(const BinaryWord& w, const CantorPoint& x) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int b = x.bit_at(i);
    if (b != w[i]) return b < w[i] ? CantorPoint::ones() : CantorPoint::zeros();
  }
  return CantorPoint::ones();
}

CantorPoint prefix_test_apply(const BinaryWord& w, const CantorPoint& x) {
  return x.extends(w) ? CantorPoint::ones() : CantorPoint::zeros();
}

CantorPoint split_apply(const BinaryWord& t, const CantorPoint& x) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int b = x.bit_at(i);
    if (b != t[i]) return b < t[i] ? CantorPoint::zeros() : CantorPoint::ones();
  }
  return CantorPoint::alternating();
}

ExtComplex newton_step(const Polynomial& p, const ExtComplex& z) { return NewtonMap(p)(z); }

std::vector<ExtComplex> newton_orbit(const NewtonMap& map, const ExtComplex& z0, std::size_t n) {
  std::vector<ExtComplex> orbit;
  orbit.reserve(n + 1);
  orbit.push_back(z0);
  for (std::size_t i = 0; i < n; ++i) orbit.push_back(map(orbit.back()));
  return orbit;
}

std::vector<ExtComplex> newton_orbit(const Polynomial& p, const ExtComplex& z0, std::size_t n) {
  return newton_orbit(NewtonMap(p), z0, n);
}

// ---------------------------------------------------------------------------

Transition Transition::identity(StateSpace space) { return {Identity{space}, space}; }
Transition Transition::threshold(BinaryWord w) { return {Threshold{std::move(w)}, StateSpace::Cantor}; }
Transition Transition::prefix_test(BinaryWord w) { return {PrefixTest{std::move(w)}, StateSpace::Cantor}; }
Transition Transition::split(BinaryWord t) { return {Split{std::move(t)}, StateSpace::Cantor}; }
Transition Transition::constant(CantorPoint c) { return {ConstantPoint{std::move(c)}, StateSpace::Cantor}; }
Transition Transition::newton(Polynomial p) {
  return newton(std::make_shared<const NewtonMap>(std::move(p)));
}
Transition Transition::newton(std::shared_ptr<const NewtonMap> map) {
  return {NewtonStep{std::move(map)}, StateSpace::Sphere};
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

CantorPoint Transition::apply(const CantorPoint& x) const {
  if (space_ != StateSpace::Cantor) throw SpaceMismatch("Cantor point given to a sphere transition");
  return std::visit(
      overloaded{
          [&](const Identity&) { return x; },
          [&](const Threshold& k) { return threshold_apply(k.w, x); },
          [&](const PrefixTest& k) { return prefix_test_apply(k.w, x); },
          [&](const Split& k) { return split_apply(k.t, x); },
          [&](const ConstantPoint& k) { return k.c; },
          [&](const NewtonStep&) -> CantorPoint { throw SpaceMismatch("unreachable"); },
          [&](const Composite& k) {
            CantorPoint y = x;
            for (const auto& f : k.chain) y = f.apply(y);
            return y;
          },
      },
      kind_);
}

ExtComplex Transition::apply(const ExtComplex& z) const {
  if (space_ != StateSpace::Sphere) throw SpaceMismatch("sphere point given to a Cantor transition");
  return std::visit(
      overloaded{
          [&](const NewtonStep& k) { return (*k.map)(z); },
          [&](const Composite& k) {
            ExtComplex y = z;
            for (const auto& f : k.chain) y = f.apply(y);
            return y;
          },
          [&](const auto&) { return z; },  // identity; other kinds are Cantor-only
      },
      kind_);
}

State Transition::apply(const State& x) const {
  return std::visit([&](const auto& v) -> State { return apply(v); }, x);
}

std::string Transition::to_string() const {
  return std::visit(
      overloaded{
          [&](const Identity& k) { return "id:" + ccslab::to_string(k.space); },
          [&](const Threshold& k) { return "threshold:" + k.w.to_string(); },
          [&](const PrefixTest& k) { return "prefix:" + k.w.to_string(); },
          [&](const Split& k) { return "split:" + k.t.to_string(); },
          [&](const ConstantPoint& k) { return "const:" + k.c.to_string(); },
          [&](const NewtonStep& k) { return "newton:" + k.map->polynomial().to_string(); },
          [&](const Composite& k) {
            std::string s = "compose(";
            for (std::size_t i = k.chain.size(); i-- > 0;) {
              s += k.chain[i].to_string();
              if (i > 0) s += ";";
            }
            return s + ")";
          },
      },
      kind_);
}

Transition compose(const Transition& outer, const Transition& inner) {
  if (outer.space() != inner.space()) {
    throw SpaceMismatch("cannot compose a " + to_string(outer.space()) + " transition with a " +
                        to_string(inner.space()) + " transition");
  }
  std::vector<Transition> chain;
  auto push = [&](const Transition& t) {
    if (const auto* c = std::get_if<Transition::Composite>(&t.kind())) {
      chain.insert(chain.end(), c->chain.begin(), c->chain.end());
    } else if (!std::holds_alternative<Transition::Identity>(t.kind())) {
      chain.push_back(t);
    }
  };
  push(inner);
  push(outer);
  if (chain.empty()) return Transition::identity(outer.space());
  if (chain.size() == 1) return chain.front();
  return Transition(Transition::Composite{std::move(chain)}, outer.space());
}

Transition power(const Transition& f, std::size_t n) {
  if (n == 0 || std::holds_alternative<Transition::Identity>(f.kind())) return Transition::identity(f.space());
  if (n == 1) return f;
  std::vector<Transition> chain;
  const auto* c = std::get_if<Transition::Composite>(&f.kind());
  chain.reserve(n * (c ? c->chain.size() : 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (c) {
      chain.insert(chain.end(), c->chain.begin(), c->chain.end());
    } else {
      chain.push_back(f);
    }
  }
  return Transition(Transition::Composite{std::move(chain)}, f.space());
}

namespace {

Transition parse_at(std::string_view text, std::size_t offset, const std::string& full) {
  auto fail = [&](const std::string& what, std::size_t pos) -> Transition {
    throw ParseError(what, full, offset + pos);
  };
  constexpr std::string_view kCompose = "compose(";
  if (text.substr(0, kCompose.size()) == kCompose) {
    if (text.back() != ')') return fail("expected ')' closing compose", text.size());
    std::vector<Transition> parts;
    int depth = 0;
    std::size_t start = kCompose.size();
    for (std::size_t i = kCompose.size(); i < text.size(); ++i) {
      const char c = text[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if ((c == ';' && depth == 0) || (c == ')' && depth < 0)) {
        if (i == start) return fail("empty compose argument", i);
        parts.push_back(parse_at(text.substr(start, i - start), offset + start, full));
        start = i + 1;
        if (c == ')' && i + 1 != text.size()) return fail("trailing characters after compose", i + 1);
      }
    }
    if (depth >= 0) return fail("unbalanced parentheses", text.size());
    Transition result = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) result = compose(parts[i], result);
    return result;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return fail("expected '<kind>:<argument>'", 0);
  const std::string kind(text.substr(0, colon));
  const std::string_view arg = text.substr(colon + 1);
  try {
    if (kind == "threshold") return Transition::threshold(BinaryWord::parse(arg));
    if (kind == "prefix") return Transition::prefix_test(BinaryWord::parse(arg));
    if (kind == "split") return Transition::split(BinaryWord::parse(arg));
    if (kind == "const") return Transition::constant(CantorPoint::parse(arg));
    if (kind == "newton") return Transition::newton(Polynomial::parse(arg));
  } catch (const ParseError& e) {
    throw ParseError(e.what(), full, offset + colon + 1 + e.position());
  }
  if (kind == "id") {
    if (arg == "cantor") return Transition::identity(StateSpace::Cantor);
    if (arg == "sphere") return Transition::identity(StateSpace::Sphere);
    return fail("expected 'cantor' or 'sphere'", colon + 1);
  }
  return fail("unknown transition kind '" + kind + "'", 0);
}

}  // namespace

Transition parse_transition(std::string_view text) {
  if (text.empty()) throw ParseError("empty transition", "", 0);
  return parse_at(text, 0, std::string(text));
}

}  // namespace ccslab
