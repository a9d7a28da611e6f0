#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccslab {

using Complex = std::complex<double>;

/// Polynomial with complex coefficients in ascending degree. The zero
/// polynomial is represented by an empty coefficient list; otherwise the
/// leading coefficient is non-zero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coefficients);

  /// ASCII grammar: sums of terms `c`, `c*z^k`, `cz^k`, `z^k`, `-z` ...
  /// with integer/float coefficients and variable `z` or `x`.
  /// Throws ParseError pointing at the offending character.
  static Polynomial parse(std::string_view text);

  /// Monic polynomial with the given roots.
  static Polynomial from_roots(const std::vector<Complex>& roots);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  Complex leading() const { return coeffs_.back(); }

  Complex operator()(Complex z) const;
  /// p(z) / z^degree, evaluated in 1/z. Well conditioned for |z| > 1.
  Complex eval_reversed(Complex inv_z) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  /// Quotient and remainder. Coefficients of the remainder with modulus
  /// below `tol` (relative to the dividend's largest coefficient) are
  /// treated as zero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor, double tol = 0.0) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim(double tol = 0.0);
  std::vector<Complex> coeffs_;
};

/// Monic greatest common divisor by Euclid's algorithm with relative
/// coefficient tolerance.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b, double tol = 1e-10);

/// All complex roots (with multiplicity) by Aberth–Ehrlich simultaneous
/// iteration followed by Newton polishing. Throws DegreeError for constants.
std::vector<Complex> polynomial_roots(const Polynomial& p, double tol = 1e-12);

}  // namespace ccslab
