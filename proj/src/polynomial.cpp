#include "modtrace/polynomial.hpp"

#include <algorithm>
#include <random>

#include "kernels.hpp"
#include "modtrace/errors.hpp"

namespace modtrace {

Polynomial::Polynomial(FieldSpec field, Vec coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c.field() != field_) throw FieldMismatch("polynomial coefficient outside its field");
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Scalar& c) { return Polynomial(c.field(), {c}); }

Polynomial Polynomial::monomial(const FieldSpec& field, std::size_t degree) {
  Vec c(degree + 1, field.zero());
  c[degree] = field.one();
  return Polynomial(field, std::move(c));
}

Polynomial Polynomial::linear(const Scalar& root) {
  return Polynomial(root.field(), {-root, root.field().one()});
}

bool Polynomial::is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

Scalar Polynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_.zero(); }

Scalar Polynomial::leading() const { return coeffs_.empty() ? field_.zero() : coeffs_.back(); }

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

Polynomial Polynomial::derivative() const {
  Vec d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d.push_back(coeffs_[i] * field_.from_int(static_cast<long long>(i)));
  return Polynomial(field_, std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (field_ != rhs.field_) throw FieldMismatch("polynomial addition across fields");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), field_.zero());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (field_ != rhs.field_) throw FieldMismatch("polynomial subtraction across fields");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), field_.zero());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (field_ != rhs.field_) throw FieldMismatch("polynomial product across fields");
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  Vec r(coeffs_.size() + rhs.coeffs_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (field_ != divisor.field_) throw FieldMismatch("polynomial division across fields");
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  Vec rem = coeffs_;
  const std::size_t db = divisor.coeffs_.size();
  if (rem.size() < db) return {Polynomial(field_), *this};
  Vec quo(rem.size() - db + 1, field_.zero());
  const Scalar lead_inv = divisor.leading().inverse();
  for (std::size_t k = rem.size(); k-- >= db;) {
    if (!rem[k].is_zero()) {
      Scalar c = rem[k] * lead_inv;
      const std::size_t shift = k - (db - 1);
      quo[shift] = c;
      for (std::size_t i = 0; i < db; ++i) rem[shift + i] -= c * divisor.coeffs_[i];
    }
    if (k == 0) break;
  }
  return {Polynomial(field_, std::move(quo)), Polynomial(field_, std::move(rem))};
}

Scalar Polynomial::evaluate(const Scalar& x) const {
  Scalar acc = field_.zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Matrix Polynomial::evaluate(const Matrix& m) const {
  if (!m.is_square()) throw DimensionMismatch("polynomial evaluated at a non-square matrix");
  if (m.field() != field_) throw FieldMismatch("polynomial and matrix over different fields");
  const std::size_t n = m.rows();
  Matrix acc(field_, n, n);
  const Matrix id = Matrix::identity(field_, n);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * m;
    if (!coeffs_[i].is_zero()) acc += id * coeffs_[i];
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    std::string c = coeffs_[i].to_string();
    const bool compound = c.find(' ') != std::string::npos;
    bool negative = false;
    if (!compound && c[0] == '-') {
      negative = true;
      c.erase(0, 1);
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (compound) c = "(" + c + ")";
    if (i == 0) {
      out += c;
      continue;
    }
    if (c != "1") out += c + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  const FieldSpec& f = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(f.one()), s1(f);
  Polynomial t0(f), t1 = Polynomial::constant(f.one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Scalar inv = r0.leading().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

// ---------------------------------------------------------------------------
// Factorization over F_p on raw residue vectors.

namespace {

using Poly = std::vector<std::uint32_t>;

struct FpPolys {
  detail::FpOps ops;

  void trim(Poly& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  int deg(const Poly& a) const { return static_cast<int>(a.size()) - 1; }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ops.sub(a[i], b[i]);
    trim(a);
    return a;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % ops.p;
    }
    Poly r(acc.begin(), acc.end());
    trim(r);
    return r;
  }

  // Returns remainder; writes quotient if requested.
  Poly rem(Poly a, const Poly& b, Poly* quo = nullptr) const {
    trim(a);
    const std::size_t db = b.size();
    if (a.size() < db) {
      if (quo) quo->clear();
      return a;
    }
    if (quo) quo->assign(a.size() - db + 1, 0);
    const std::uint32_t inv = ops.inv(b.back());
    for (std::size_t k = a.size(); k-- >= db;) {
      if (a[k] != 0) {
        const std::uint32_t c = ops.mul(a[k], inv);
        const std::size_t shift = k - (db - 1);
        if (quo) (*quo)[shift] = c;
        ops.axpy_neg(&a[shift], b.data(), c, 0, db);
      }
      if (k == 0) break;
    }
    trim(a);
    if (quo) trim(*quo);
    return a;
  }

  Poly div(const Poly& a, const Poly& b) const {
    Poly q;
    rem(a, b, &q);
    return q;
  }

  Poly monic(Poly a) const {
    if (a.empty()) return a;
    const std::uint32_t inv = ops.inv(a.back());
    for (auto& c : a) c = ops.mul(c, inv);
    return a;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  Poly derivative(const Poly& a) const {
    Poly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(ops.mul(a[i], static_cast<std::uint32_t>(i % ops.p)));
    trim(d);
    return d;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return rem(mul(a, b), m); }

  Poly powmod(Poly base, const mpz_class& e, const Poly& m) const {
    Poly result{1};
    result = rem(result, m);
    base = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = mulmod(result, result, m);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
    }
    return result;
  }

  bool is_one(const Poly& a) const { return a.size() == 1 && a[0] == 1; }
};

void squarefree(const FpPolys& P, const Poly& f, unsigned scale, std::vector<std::pair<Poly, unsigned>>& out) {
  if (P.deg(f) < 1) return;
  Poly c = P.gcd(f, P.derivative(f));
  Poly w = P.div(f, c);
  unsigned i = 1;
  while (P.deg(w) > 0) {
    Poly y = P.gcd(w, c);
    Poly z = P.div(w, y);
    if (P.deg(z) > 0) out.emplace_back(P.monic(z), i * scale);
    ++i;
    w = std::move(y);
    c = P.div(c, w);
  }
  if (P.deg(c) > 0) {
    // c is a p-th power; in F_p the p-th root of each coefficient is itself.
    Poly root;
    for (std::size_t k = 0; k < c.size(); k += P.ops.p) root.push_back(c[k]);
    squarefree(P, root, scale * P.ops.p, out);
  }
}

void equal_degree(const FpPolys& P, const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const int n = P.deg(g);
  if (n == d) {
    out.push_back(g);
    return;
  }
  const std::uint32_t p = P.ops.p;
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
  for (;;) {
    Poly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = static_cast<std::uint32_t>(rng() % p);
    P.trim(a);
    if (P.deg(a) < 1) continue;
    Poly b;
    if (p == 2) {
      // Trace map a + a^2 + a^4 + ... + a^(2^(d-1)) modulo g.
      Poly term = P.rem(a, g);
      b = term;
      for (int i = 1; i < d; ++i) {
        term = P.mulmod(term, term, g);
        if (b.size() < term.size()) b.resize(term.size(), 0);
        for (std::size_t k = 0; k < term.size(); ++k) b[k] ^= term[k];
        P.trim(b);
      }
    } else {
      mpz_class e = (q - 1) / 2;
      b = P.sub(P.powmod(a, e, g), Poly{1});
    }
    Poly h = P.gcd(b, g);
    const int dh = P.deg(h);
    if (dh > 0 && dh < n) {
      equal_degree(P, h, d, rng, out);
      equal_degree(P, P.monic(P.div(g, h)), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor_over_prime_field(const Polynomial& f, std::uint64_t seed) {
  const FieldSpec& field = f.field();
  if (!field.is_prime()) throw Unsupported("polynomial factorization is implemented over prime fields only");
  if (f.is_zero()) throw MalformedInput("cannot factor the zero polynomial");
  FpPolys P{detail::FpOps{field.p()}};
  Poly raw;
  for (const auto& c : f.coeffs()) raw.push_back(c.residue_value());
  raw = P.monic(raw);

  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree(P, raw, 1, sqf);

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, unsigned>> factors;
  for (auto& [g0, mult] : sqf) {
    Poly g = g0;
    Poly h{0, 1};  // t
    int d = 1;
    while (P.deg(g) >= 2 * d) {
      h = P.powmod(h, mpz_class(field.p()), g);
      Poly part = P.gcd(P.sub(h, Poly{0, 1}), g);
      if (P.deg(part) > 0) {
        std::vector<Poly> pieces;
        equal_degree(P, part, d, rng, pieces);
        for (auto& piece : pieces) factors.emplace_back(std::move(piece), mult);
        g = P.div(g, part);
        h = P.rem(h, g);
      }
      ++d;
    }
    if (P.deg(g) > 0) factors.emplace_back(P.monic(g), mult);
  }

  // Squarefree parts of different multiplicity are coprime, so factors are distinct.
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(), b.first.rend());
  });
  std::vector<Factor> result;
  for (auto& [g, mult] : factors) {
    Vec coeffs;
    for (auto c : g) coeffs.push_back(Scalar::residue(c, field.p()));
    result.push_back({Polynomial(field, std::move(coeffs)), mult});
  }
  return result;
}

}  // namespace modtrace
