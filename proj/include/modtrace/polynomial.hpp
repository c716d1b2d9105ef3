#ifndef MODTRACE_POLYNOMIAL_HPP
#define MODTRACE_POLYNOMIAL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modtrace/field.hpp"
#include "modtrace/matrix.hpp"

namespace modtrace {

/// Univariate polynomial in t, coefficients lowest degree first, no trailing zeros.
class Polynomial {
 public:
  explicit Polynomial(FieldSpec field, Vec coeffs = {});

  static Polynomial constant(const Scalar& c);
  /// t^degree
  static Polynomial monomial(const FieldSpec& field, std::size_t degree);
  /// t - root
  static Polynomial linear(const Scalar& root);

  const FieldSpec& field() const noexcept { return field_; }
  const Vec& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const;
  Scalar coeff(std::size_t i) const;
  Scalar leading() const;
  Polynomial monic() const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Scalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial operator%(const Polynomial& divisor) const { return divmod(divisor).second; }
  Polynomial operator/(const Polynomial& divisor) const { return divmod(divisor).first; }

  Scalar evaluate(const Scalar& x) const;
  Matrix evaluate(const Matrix& m) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Highest degree first, e.g. "t^2 + 2*t + 1".
  std::string to_string() const;

 private:
  void trim();

  FieldSpec field_;
  Vec coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct ExtendedGcd {
  Polynomial g;  // monic
  Polynomial s;
  Polynomial t;  // s*a + t*b = g
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

struct Factor {
  Polynomial factor;  // monic irreducible
  unsigned multiplicity;
};

/// Complete factorization of a nonzero polynomial over F_p into monic
/// irreducibles (the leading coefficient is dropped). Squarefree, distinct
/// degree, then seeded Cantor-Zassenhaus equal degree splitting. Factors are
/// sorted by degree, then coefficients.
std::vector<Factor> factor_over_prime_field(const Polynomial& f, std::uint64_t seed = 0);

}  // namespace modtrace

#endif  // MODTRACE_POLYNOMIAL_HPP
