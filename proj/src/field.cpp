#include "modtrace/field.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

#include "modtrace/errors.hpp"

namespace modtrace {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Quotient and remainder of a by nonzero b in Q[z].
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  const mpq_class& lead = b.back();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    if (a[k] == 0) continue;
    mpq_class c = a[k] / lead;
    std::size_t shift = k - (b.size() - 1);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    if (k == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw MalformedInput("empty scalar string");
  std::string body = text;
  if (body[0] == '+') body.erase(0, 1);
  std::size_t slash = body.find('/');
  auto check_int = [&](const std::string& s) {
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start) throw MalformedInput("malformed number '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw MalformedInput("malformed number '" + text + "'");
  };
  mpq_class q;
  if (slash == std::string::npos) {
    check_int(body);
    q = mpz_class(body, 10);
  } else {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    check_int(num);
    check_int(den);
    mpz_class d(den, 10);
    if (d == 0) throw MalformedInput("zero denominator in '" + text + "'");
    q = mpq_class(mpz_class(num, 10), d);
    q.canonicalize();
  }
  return q;
}

std::uint32_t reduce_mod(const mpz_class& value, std::uint32_t p) {
  mpz_class r = value % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

// ---------------------------------------------------------------------------
// number theory helpers

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned euler_totient(unsigned n) {
  unsigned result = n;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    while (n % d == 0) n /= d;
    result -= result / d;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<mpz_class> cyclotomic_polynomial(unsigned order) {
  if (order < 1) throw MalformedInput("cyclotomic order must be positive");
  // z^l - 1 divided by Phi_d for every proper divisor d.
  std::vector<mpz_class> poly(order + 1, 0);
  poly[0] = -1;
  poly[order] = 1;
  for (unsigned d = 1; d < order; ++d) {
    if (order % d != 0) continue;
    std::vector<mpz_class> divisor = cyclotomic_polynomial(d);
    std::size_t db = divisor.size() - 1;
    std::vector<mpz_class> quotient(poly.size() - db, 0);
    for (std::size_t k = poly.size() - 1; k + 1 > db; --k) {
      mpz_class c = poly[k];  // divisor is monic
      quotient[k - db] = c;
      if (c != 0)
        for (std::size_t i = 0; i <= db; ++i) poly[k - db + i] -= c * divisor[i];
      if (k == db) break;
    }
    poly = std::move(quotient);
  }
  return poly;
}

CyclotomicData::CyclotomicData(unsigned order) : order_(order) {
  if (order < 2) throw MalformedInput("cyclotomic field needs l >= 2");
  modulus_ = cyclotomic_polynomial(order);
}

void CyclotomicData::reduce(std::vector<mpq_class>& coeffs) const {
  const std::size_t deg = degree();
  for (std::size_t k = coeffs.size(); k-- > deg;) {
    if (coeffs[k] == 0) continue;
    mpq_class c = coeffs[k];
    for (std::size_t i = 0; i < deg; ++i) coeffs[k - deg + i] -= c * modulus_[i];
    coeffs[k] = 0;
  }
  if (coeffs.size() > deg) coeffs.resize(deg);
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!modtrace::is_prime(p)) throw MalformedInput("F_p requires a prime, got " + std::to_string(p));
  if (p >= (1u << 31)) throw Unsupported("primes must be below 2^31");
  return FieldSpec(Kind::prime, p, nullptr);
}

FieldSpec FieldSpec::rational() { return FieldSpec(Kind::rational, 0, nullptr); }

FieldSpec FieldSpec::cyclotomic(unsigned order) {
  return FieldSpec(Kind::cyclotomic, order, std::make_shared<const CyclotomicData>(order));
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  auto parse_uint = [&](const std::string& digits) -> unsigned {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw MalformedInput("malformed field spec '" + std::string(text) + "'");
    return static_cast<unsigned>(std::stoul(digits));
  };
  if (s == "Q") return rational();
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') return prime(parse_uint(s.substr(3, s.size() - 4)));
  if (s.rfind("F_", 0) == 0) return prime(parse_uint(s.substr(2)));
  if (s.size() > 1 && s[0] == 'F') return prime(parse_uint(s.substr(1)));
  for (std::string prefix : {"Q(zeta_", "Q(zeta"}) {
    if (s.rfind(prefix, 0) == 0 && s.back() == ')')
      return cyclotomic(parse_uint(s.substr(prefix.size(), s.size() - prefix.size() - 1)));
  }
  throw MalformedInput("unknown field spec '" + std::string(text) + "'");
}

unsigned FieldSpec::degree() const noexcept {
  return kind_ == Kind::cyclotomic ? cyc_->degree() : 1;
}

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(long long value) const {
  switch (kind_) {
    case Kind::prime:
      return Scalar::residue(value, param_);
    case Kind::rational:
      return Scalar::rational(mpq_class(mpz_class(static_cast<long>(value))));
    case Kind::cyclotomic: {
      std::vector<mpq_class> c(cyc_->degree(), 0);
      c[0] = mpz_class(static_cast<long>(value));
      return Scalar::cyclotomic(cyc_, std::move(c));
    }
  }
  throw InternalError("unreachable field kind");
}

Scalar FieldSpec::from_rational(const mpq_class& value) const {
  switch (kind_) {
    case Kind::prime: {
      std::uint32_t num = reduce_mod(value.get_num(), param_);
      std::uint32_t den = reduce_mod(value.get_den(), param_);
      if (den == 0) throw DivisionByZero("denominator vanishes in F_" + std::to_string(param_));
      return Scalar::residue(static_cast<std::int64_t>(
                                 static_cast<std::uint64_t>(num) * mod_inverse(den, param_) % param_),
                             param_);
    }
    case Kind::rational:
      return Scalar::rational(value);
    case Kind::cyclotomic: {
      std::vector<mpq_class> c(cyc_->degree(), 0);
      c[0] = value;
      return Scalar::cyclotomic(cyc_, std::move(c));
    }
  }
  throw InternalError("unreachable field kind");
}

Scalar FieldSpec::zeta() const {
  if (kind_ != Kind::cyclotomic) throw Unsupported("zeta exists only in cyclotomic fields");
  std::vector<mpq_class> c(2, 0);
  c[1] = 1;
  return Scalar::cyclotomic(cyc_, std::move(c));
}

Scalar FieldSpec::parse_scalar(std::string_view text) const {
  std::string s = strip_spaces(text);
  if (s.empty()) throw MalformedInput("empty scalar string");
  if (kind_ != Kind::cyclotomic) return from_rational(parse_rational(s));

  // Polynomial in z: replace the accepted spellings of the generator.
  for (const std::string& alias : {std::string("zeta"), std::string("\xCE\xB6")}) {
    std::size_t pos;
    while ((pos = s.find(alias)) != std::string::npos) s.replace(pos, alias.size(), "z");
  }
  std::vector<mpq_class> coeffs(1, 0);
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i + 1;
    while (j < s.size() && s[j] != '+' && s[j] != '-') {
      if (s[j] == '^') {  // exponent may not carry a sign
        ++j;
        continue;
      }
      ++j;
    }
    std::string term = s.substr(i, j - i);
    i = j;
    bool negative = false;
    if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      negative = term[0] == '-';
      term.erase(0, 1);
    }
    if (term.empty()) throw MalformedInput("malformed cyclotomic scalar '" + std::string(text) + "'");
    mpq_class coeff = 1;
    std::size_t power = 0;
    std::size_t zpos = term.find('z');
    if (zpos == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      std::string head = term.substr(0, zpos);
      std::string tail = term.substr(zpos + 1);
      if (!head.empty()) {
        if (head.back() != '*') throw MalformedInput("expected '*' before z in '" + std::string(text) + "'");
        head.pop_back();
        coeff = parse_rational(head);
      }
      if (!tail.empty()) {
        if (tail[0] != '^') throw MalformedInput("malformed power in '" + std::string(text) + "'");
        std::string digits = tail.substr(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw MalformedInput("malformed power in '" + std::string(text) + "'");
        power = std::stoul(digits);
      } else {
        power = 1;
      }
    }
    if (negative) coeff = -coeff;
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += coeff;
  }
  return Scalar::cyclotomic(cyc_, std::move(coeffs));
}

std::string FieldSpec::to_string() const {
  switch (kind_) {
    case Kind::prime:
      return "F" + std::to_string(param_);
    case Kind::rational:
      return "Q";
    case Kind::cyclotomic:
      return "Q(zeta_" + std::to_string(param_) + ")";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const FieldSpec& field) { return os << field.to_string(); }

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::residue(std::int64_t value, std::uint32_t p) {
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return Scalar(Residue{static_cast<std::uint32_t>(r), p});
}

Scalar Scalar::rational(mpq_class value) {
  value.canonicalize();
  return Scalar(std::move(value));
}

Scalar Scalar::cyclotomic(std::shared_ptr<const CyclotomicData> data, std::vector<mpq_class> coeffs) {
  for (auto& c : coeffs) c.canonicalize();
  data->reduce(coeffs);
  return Scalar(Cyclo{std::move(data), std::move(coeffs)});
}

FieldSpec Scalar::field() const {
  switch (rep_.index()) {
    case 0:
      return FieldSpec::prime(std::get<Residue>(rep_).p);
    case 1:
      return FieldSpec::rational();
    default: {
      const auto& data = std::get<Cyclo>(rep_).data;
      return FieldSpec(FieldSpec::Kind::cyclotomic, data->order(), data);
    }
  }
}

bool Scalar::same_field(const Scalar& other) const noexcept {
  if (rep_.index() != other.rep_.index()) return false;
  switch (rep_.index()) {
    case 0:
      return std::get<Residue>(rep_).p == std::get<Residue>(other.rep_).p;
    case 1:
      return true;
    default:
      return std::get<Cyclo>(rep_).data->order() == std::get<Cyclo>(other.rep_).data->order();
  }
}

void Scalar::check_same_field(const Scalar& other) const {
  if (!same_field(other))
    throw FieldMismatch("scalar arithmetic across fields: " + field().to_string() + " vs " +
                        other.field().to_string());
}

bool Scalar::is_zero() const noexcept {
  switch (rep_.index()) {
    case 0:
      return std::get<Residue>(rep_).value == 0;
    case 1:
      return std::get<mpq_class>(rep_) == 0;
    default:
      return std::get<Cyclo>(rep_).coeffs.empty();
  }
}

bool Scalar::is_one() const noexcept {
  switch (rep_.index()) {
    case 0:
      return std::get<Residue>(rep_).value == 1 % std::get<Residue>(rep_).p;
    case 1:
      return std::get<mpq_class>(rep_) == 1;
    default: {
      const auto& c = std::get<Cyclo>(rep_).coeffs;
      return c.size() == 1 && c[0] == 1;
    }
  }
}

Scalar Scalar::operator-() const {
  switch (rep_.index()) {
    case 0: {
      Residue r = std::get<Residue>(rep_);
      r.value = r.value == 0 ? 0 : r.p - r.value;
      return Scalar(r);
    }
    case 1:
      return Scalar(mpq_class(-std::get<mpq_class>(rep_)));
    default: {
      Cyclo c = std::get<Cyclo>(rep_);
      for (auto& x : c.coeffs) x = -x;
      return Scalar(std::move(c));
    }
  }
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  switch (rep_.index()) {
    case 0: {
      auto& a = std::get<Residue>(rep_);
      std::uint64_t s = std::uint64_t(a.value) + std::get<Residue>(rhs.rep_).value;
      a.value = static_cast<std::uint32_t>(s >= a.p ? s - a.p : s);
      break;
    }
    case 1:
      std::get<mpq_class>(rep_) += std::get<mpq_class>(rhs.rep_);
      break;
    default: {
      auto& a = std::get<Cyclo>(rep_).coeffs;
      const auto& b = std::get<Cyclo>(rhs.rep_).coeffs;
      if (a.size() < b.size()) a.resize(b.size(), 0);
      for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
      trim(a);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  switch (rep_.index()) {
    case 0: {
      auto& a = std::get<Residue>(rep_);
      std::uint32_t b = std::get<Residue>(rhs.rep_).value;
      a.value = a.value >= b ? a.value - b : a.value + (a.p - b);
      break;
    }
    case 1:
      std::get<mpq_class>(rep_) -= std::get<mpq_class>(rhs.rep_);
      break;
    default: {
      auto& a = std::get<Cyclo>(rep_).coeffs;
      const auto& b = std::get<Cyclo>(rhs.rep_).coeffs;
      if (a.size() < b.size()) a.resize(b.size(), 0);
      for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
      trim(a);
    }
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  switch (rep_.index()) {
    case 0: {
      auto& a = std::get<Residue>(rep_);
      a.value = static_cast<std::uint32_t>(std::uint64_t(a.value) * std::get<Residue>(rhs.rep_).value % a.p);
      break;
    }
    case 1:
      std::get<mpq_class>(rep_) *= std::get<mpq_class>(rhs.rep_);
      break;
    default: {
      auto& self = std::get<Cyclo>(rep_);
      const auto& b = std::get<Cyclo>(rhs.rep_).coeffs;
      if (self.coeffs.empty()) break;
      if (b.empty()) {
        self.coeffs.clear();
        break;
      }
      std::vector<mpq_class> prod(self.coeffs.size() + b.size() - 1, 0);
      for (std::size_t i = 0; i < self.coeffs.size(); ++i) {
        if (self.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
          if (b[j] != 0) prod[i + j] += self.coeffs[i] * b[j];
      }
      self.data->reduce(prod);
      self.coeffs = std::move(prod);
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  switch (rep_.index()) {
    case 0: {
      Residue r = std::get<Residue>(rep_);
      r.value = mod_inverse(r.value, r.p);
      return Scalar(r);
    }
    case 1:
      return Scalar(mpq_class(1 / std::get<mpq_class>(rep_)));
    default: {
      // Extended Euclid against Phi_l; the gcd is a nonzero constant since Phi_l is irreducible.
      const Cyclo& self = std::get<Cyclo>(rep_);
      QPoly r0(self.data->modulus().begin(), self.data->modulus().end());
      QPoly r1 = self.coeffs;
      trim(r1);
      QPoly s0, s1{1};
      while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly next = sub(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(next);
      }
      if (r0.size() != 1) throw InternalError("cyclotomic modulus is not irreducible");
      for (auto& c : s0) c /= r0[0];
      return Scalar::cyclotomic(self.data, std::move(s0));
    }
  }
}

Scalar Scalar::pow(std::uint64_t exponent) const {
  Scalar result = field().one();
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.same_field(b)) return false;
  switch (a.rep_.index()) {
    case 0:
      return std::get<Scalar::Residue>(a.rep_).value == std::get<Scalar::Residue>(b.rep_).value;
    case 1:
      return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
    default:
      return std::get<Scalar::Cyclo>(a.rep_).coeffs == std::get<Scalar::Cyclo>(b.rep_).coeffs;
  }
}

std::string Scalar::to_string() const {
  switch (rep_.index()) {
    case 0:
      return std::to_string(std::get<Residue>(rep_).value);
    case 1:
      return std::get<mpq_class>(rep_).get_str();
    default: {
      const auto& c = std::get<Cyclo>(rep_).coeffs;
      std::string out;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        mpq_class mag = abs(c[k]);
        bool negative = c[k] < 0;
        if (out.empty())
          out += negative ? "-" : "";
        else
          out += negative ? " - " : " + ";
        if (k == 0) {
          out += mag.get_str();
          continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += "z";
        if (k > 1) out += "^" + std::to_string(k);
      }
      return out.empty() ? "0" : out;
    }
  }
}

std::uint32_t Scalar::residue_value() const { return std::get<Residue>(rep_).value; }
std::uint32_t Scalar::modulus() const { return std::get<Residue>(rep_).p; }
const mpq_class& Scalar::rational_value() const { return std::get<mpq_class>(rep_); }
const std::vector<mpq_class>& Scalar::cyclotomic_coefficients() const { return std::get<Cyclo>(rep_).coeffs; }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar random_scalar(const FieldSpec& field, std::mt19937_64& rng) {
  switch (field.kind()) {
    case FieldSpec::Kind::prime:
      return Scalar::residue(static_cast<std::int64_t>(rng() % field.p()), field.p());
    case FieldSpec::Kind::rational:
      return field.from_int(static_cast<long long>(rng() % 9) - 4);
    case FieldSpec::Kind::cyclotomic: {
      std::vector<mpq_class> c(field.degree());
      for (auto& x : c) x = static_cast<long>(rng() % 9) - 4;
      return Scalar::cyclotomic(field.cyclotomic_data(), std::move(c));
    }
  }
  throw InternalError("unreachable field kind");
}

}  // namespace modtrace
