#include "ccslab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ccslab/errors.hpp"

namespace ccslab {

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("polynomial coefficients must be finite");
    }
  }
  trim();
}

void Polynomial::trim(double tol) {
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double cut = tol * std::max(scale, 1.0);
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      skip_ws();
    }
    term(sign);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      skip_ws();
      term(sign);
    }
    return Polynomial(coeffs_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, std::string(text_), pos_);
  }
  static bool is_var(char c) { return c == 'z' || c == 'x'; }

  void term(int sign) {
    if (at_end()) fail("expected a term");
    double coef = 1.0;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      coef = number();
      have_number = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || !is_var(peek())) fail("expected variable after '*'");
      }
    }
    std::size_t power = 0;
    if (!at_end() && is_var(peek())) {
      ++pos_;
      power = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        power = exponent();
      }
    } else if (!have_number) {
      fail("expected a number or variable");
    }
    if (coeffs_.size() <= power) coeffs_.resize(power + 1);
    coeffs_[power] += sign * coef;
  }

  double number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = mark;
        fail("malformed exponent");
      }
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    if (lexeme == ".") {
      pos_ = start;
      fail("malformed number");
    }
    return std::stod(lexeme);
  }

  std::size_t exponent() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected a non-negative integer exponent");
    if (pos_ - start > 3) {
      pos_ = start;
      fail("exponent too large");
    }
    return static_cast<std::size_t>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Complex> coeffs_;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return PolyParser(text).parse(); }

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::eval_reversed(Complex inv_z) const {
  Complex acc = 0.0;
  for (const auto& c : coeffs_) acc = acc * inv_z + c;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  auto c = coeffs_;
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor, double tol) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (degree() < divisor.degree()) return {Polynomial{}, *this};
  std::vector<Complex> rem = coeffs_;
  std::vector<Complex> quot(coeffs_.size() - divisor.coeffs_.size() + 1);
  const std::size_t dn = divisor.coeffs_.size();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Complex q = rem[k + dn - 1] / divisor.leading();
    quot[k] = q;
    for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= q * divisor.coeffs_[j];
    rem[k + dn - 1] = 0.0;
  }
  rem.resize(dn - 1);
  Polynomial r;
  r.coeffs_ = std::move(rem);
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double cut = tol * std::max(scale, 1.0);
  for (auto& c : r.coeffs_) {
    if (std::abs(c) <= cut) c = 0.0;
  }
  r.trim();
  return {Polynomial(std::move(quot)), r};
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os.precision(15);
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Complex c = coeffs_[k];
    if (c == Complex{}) continue;
    const bool real = c.imag() == 0.0;
    if (real) {
      double v = c.real();
      if (v < 0) {
        os << "-";
        v = -v;
      } else if (!first) {
        os << "+";
      }
      if (v != 1.0 || k == 0) os << v;
    } else {
      if (!first) os << "+";
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    if (k >= 1) os << "z";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b, double tol) {
  Polynomial x = a.monic();
  Polynomial y = b.monic();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    auto [q, r] = x.divmod(y, tol);
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<Complex> polynomial_roots(const Polynomial& p, double tol) {
  if (p.degree() < 1) throw DegreeError("constant polynomial has no roots to find");
  const auto& c = p.coefficients();
  const int n = p.degree();
  if (n == 1) return {-c[0] / c[1]};

  const Polynomial dp = p.derivative();
  // Cauchy bound on the root moduli.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / c[n]));
  const double radius = 0.5 * (1.0 + bound);

  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = std::polar(radius, angle);
  }

  for (int iter = 0; iter < 1000; ++iter) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex pv = p(z[k]);
      if (pv == Complex{}) continue;
      const Complex ratio = pv / dp(z[k]);
      Complex repulsion = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
        z[k] -= step;
        max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
      }
    }
    if (max_step < tol * 1e-2) break;
  }

  // Newton polishing for simple roots.
  for (auto& r : z) {
    for (int i = 0; i < 4; ++i) {
      const Complex d = dp(r);
      if (std::abs(d) == 0.0) break;
      const Complex step = p(r) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
  }
  return z;
}

}  // namespace ccslab
