#include "ccslab/states.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "ccslab/errors.hpp"

namespace ccslab {

std::string PredicateId::to_string() const {
  if (index) return name + "_" + std::to_string(*index);
  return name;
}

Sizer::Sizer(double default_bound) : Sizer(default_bound, {}) {}

Sizer::Sizer(double default_bound, std::map<PredicateId, double> bounds)
    : default_bound_(default_bound), bounds_(std::move(bounds)) {
  if (!(default_bound_ > 0.0)) throw std::invalid_argument("sizer bounds must be positive");
  for (const auto& [id, b] : bounds_) {
    if (!(b > 0.0)) throw std::invalid_argument("sizer bound for " + id.to_string() + " must be positive");
  }
}

double Sizer::bound(const PredicateId& id) const {
  auto it = bounds_.find(id);
  return it == bounds_.end() ? default_bound_ : it->second;
}

Sizer Sizer::with(const PredicateId& id, double bound) const {
  auto bounds = bounds_;
  bounds[id] = bound;
  return Sizer(default_bound_, std::move(bounds));
}

bool in_shard(const StateType& v, const Sizer& r) {
  for (const auto& [id, value] : v.values) {
    if (std::abs(value) > r.bound(id)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ExtComplex::ExtComplex(std::complex<double> z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("finite ExtComplex needs finite coordinates");
  }
}

ExtComplex ExtComplex::infinity() {
  ExtComplex z;
  z.infinite_ = true;
  return z;
}

std::complex<double> ExtComplex::value() const {
  if (infinite_) throw std::logic_error("value() of the point at infinity");
  return z_;
}

namespace {

// Reads an optionally signed decimal number at text[pos]; an absent
// magnitude before 'i' counts as 1.
double read_number(std::string_view text, std::size_t& pos, bool allow_unit) {
  const std::string rest(text.substr(pos));
  const char* begin = rest.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin) {
    pos += static_cast<std::size_t>(end - begin);
    return v;
  }
  if (allow_unit && !rest.empty()) {
    if (rest[0] == 'i') return 1.0;
    if ((rest[0] == '+' || rest[0] == '-') && rest.size() > 1 && rest[1] == 'i') {
      ++pos;
      return rest[0] == '-' ? -1.0 : 1.0;
    }
  }
  throw ParseError("expected a number", std::string(text), pos);
}

}  // namespace

ExtComplex ExtComplex::parse(std::string_view raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ') text.push_back(c);
  }
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  if (text.empty()) throw ParseError("empty complex number", text, 0);
  std::size_t pos = 0;
  const double first = read_number(text, pos, true);
  if (pos == text.size()) return ExtComplex(first);
  if (text[pos] == 'i') {
    if (pos + 1 != text.size()) throw ParseError("unexpected trailing input", text, pos + 1);
    return ExtComplex(0.0, first);
  }
  if (text[pos] != '+' && text[pos] != '-') throw ParseError("expected '+', '-' or 'i'", text, pos);
  const double second = read_number(text, pos, true);
  if (pos >= text.size() || text[pos] != 'i') throw ParseError("expected 'i'", text, pos);
  if (pos + 1 != text.size()) throw ParseError("unexpected trailing input", text, pos + 1);
  const ExtComplex out(std::complex<double>(first, second));
  return out;
}

std::string ExtComplex::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << z_.real();
  if (z_.imag() != 0.0) os << (z_.imag() < 0 ? "-" : "+") << std::abs(z_.imag()) << "i";
  return os.str();
}

std::array<double, 3> stereo_coords(const ExtComplex& z) {
  if (z.is_infinity()) return {0.0, 0.0, 1.0};
  const auto v = z.value();
  const double r = std::abs(v);
  if (r <= 1.0) {
    const double r2 = r * r;
    const double d = r2 + 1.0;
    return {2.0 * v.real() / d, 2.0 * v.imag() / d, (r2 - 1.0) / d};
  }
  // Divide through by |z|^2 so huge moduli do not overflow.
  const double inv2 = (1.0 / r) * (1.0 / r);
  const double d = 1.0 + inv2;
  return {2.0 * (v.real() / r) / r / d, 2.0 * (v.imag() / r) / r / d, (1.0 - inv2) / d};
}

double chordal_distance(const ExtComplex& z, const ExtComplex& w) {
  if (z.is_infinity() && w.is_infinity()) return 0.0;
  if (z.is_infinity() || w.is_infinity()) {
    const auto a = stereo_coords(z);
    const auto b = stereo_coords(w);
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                     (a[2] - b[2]) * (a[2] - b[2]));
  }
  const auto zv = z.value();
  const auto wv = w.value();
  const double num = 2.0 * std::abs(zv - wv);
  return num / std::hypot(1.0, std::abs(zv)) / std::hypot(1.0, std::abs(wv));
}

StateType cantor_type(const CantorPoint& x, const std::vector<PredicateId>& ids) {
  StateType t;
  for (const auto& id : ids) {
    if (id.name != "P" || !id.index) {
      throw std::invalid_argument("Cantor space only carries projections P_n, got " + id.to_string());
    }
    t.values[id] = x.bit_at(*id.index);
  }
  return t;
}

StateType cantor_type(const CantorPoint& x, std::size_t n) {
  std::vector<PredicateId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(PredicateId::projection(i));
  return cantor_type(x, ids);
}

StateType sphere_type(const ExtComplex& z) {
  const auto c = stereo_coords(z);
  StateType t;
  t.values[{"P1", std::nullopt}] = c[0];
  t.values[{"P2", std::nullopt}] = c[1];
  t.values[{"P3", std::nullopt}] = c[2];
  return t;
}

}  // namespace ccslab
