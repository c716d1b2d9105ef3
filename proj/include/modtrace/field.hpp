#ifndef MODTRACE_FIELD_HPP
#define MODTRACE_FIELD_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace modtrace {

class Scalar;

/// Arithmetic data of Q(zeta_l) = Q[z] / Phi_l(z).
class CyclotomicData {
 public:
  explicit CyclotomicData(unsigned order);

  unsigned order() const noexcept { return order_; }
  unsigned degree() const noexcept { return static_cast<unsigned>(modulus_.size() - 1); }
  /// Coefficients of Phi_l, lowest degree first; monic.
  const std::vector<mpz_class>& modulus() const noexcept { return modulus_; }

  /// Reduces an arbitrary-length coefficient list modulo Phi_l and drops trailing zeros.
  void reduce(std::vector<mpq_class>& coeffs) const;

 private:
  unsigned order_;
  std::vector<mpz_class> modulus_;
};

/// Returns the l-th cyclotomic polynomial, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(unsigned order);
unsigned euler_totient(unsigned n);
bool is_prime(std::uint64_t n);

/// The ground field: F_p, Q, or Q(zeta_l).
class FieldSpec {
 public:
  enum class Kind { prime, rational, cyclotomic };

  static FieldSpec prime(std::uint32_t p);
  static FieldSpec rational();
  static FieldSpec cyclotomic(unsigned order);
  /// Accepts "F3", "F_3", "GF(3)", "Q", "Q(zeta_5)", "Q(zeta5)".
  static FieldSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  std::uint32_t p() const noexcept { return kind_ == Kind::prime ? param_ : 0; }
  unsigned order() const noexcept { return kind_ == Kind::cyclotomic ? param_ : 0; }
  unsigned degree() const noexcept;
  std::uint32_t characteristic() const noexcept { return p(); }
  const std::shared_ptr<const CyclotomicData>& cyclotomic_data() const noexcept { return cyc_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  Scalar from_rational(const mpq_class& value) const;
  /// The class of z in Q(zeta_l).
  Scalar zeta() const;
  /// Decimal residue for F_p (also "a/b"), "a/b" for Q, polynomial in z for Q(zeta_l).
  Scalar parse_scalar(std::string_view text) const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.kind_ == b.kind_ && a.param_ == b.param_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) noexcept { return !(a == b); }

 private:
  friend class Scalar;
  FieldSpec(Kind kind, std::uint32_t param, std::shared_ptr<const CyclotomicData> cyc)
      : kind_(kind), param_(param), cyc_(std::move(cyc)) {}

  Kind kind_;
  std::uint32_t param_;
  std::shared_ptr<const CyclotomicData> cyc_;
};

std::ostream& operator<<(std::ostream& os, const FieldSpec& field);

/// An exact field element in canonical form, so that equality is representation equality.
class Scalar {
 public:
  static Scalar residue(std::int64_t value, std::uint32_t p);
  static Scalar rational(mpq_class value);
  static Scalar cyclotomic(std::shared_ptr<const CyclotomicData> data, std::vector<mpq_class> coeffs);

  FieldSpec field() const;
  bool same_field(const Scalar& other) const noexcept;

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(std::uint64_t exponent) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;

  // Representation access for kernels and serialization.
  std::uint32_t residue_value() const;
  std::uint32_t modulus() const;
  const mpq_class& rational_value() const;
  /// Lowest degree first, no trailing zeros (empty for zero).
  const std::vector<mpq_class>& cyclotomic_coefficients() const;

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t p;
  };
  struct Cyclo {
    std::shared_ptr<const CyclotomicData> data;
    std::vector<mpq_class> coeffs;
  };

  explicit Scalar(Residue r) : rep_(r) {}
  explicit Scalar(mpq_class q) : rep_(std::move(q)) {}
  explicit Scalar(Cyclo c) : rep_(std::move(c)) {}

  void check_same_field(const Scalar& other) const;

  std::variant<Residue, mpq_class, Cyclo> rep_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Vec = std::vector<Scalar>;

/// Small random element: uniform residue for F_p, integers in [-4, 4] (coefficientwise) otherwise.
Scalar random_scalar(const FieldSpec& field, std::mt19937_64& rng);

}  // namespace modtrace

#endif  // MODTRACE_FIELD_HPP
