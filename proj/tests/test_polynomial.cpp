#include <gtest/gtest.h>

#include <random>

#include "modtrace/errors.hpp"
#include "modtrace/polynomial.hpp"

using namespace modtrace;

namespace {

// Every monic polynomial of the given degree over F_p.
std::vector<Polynomial> all_monic(const FieldSpec& f, int degree) {
  std::vector<Polynomial> out;
  const std::uint32_t p = f.p();
  std::size_t count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (std::size_t code = 0; code < count; ++code) {
    Vec c(degree + 1, f.zero());
    std::size_t r = code;
    for (int i = 0; i < degree; ++i) {
      c[i] = f.from_int(static_cast<long long>(r % p));
      r /= p;
    }
    c[degree] = f.one();
    out.emplace_back(f, c);
  }
  return out;
}

bool brute_irreducible(const Polynomial& g) {
  for (int d = 1; 2 * d <= g.degree(); ++d)
    for (const auto& q : all_monic(g.field(), d))
      if ((g % q).is_zero()) return false;
  return true;
}

}  // namespace

TEST(Polynomial, DivmodAndGcd) {
  const FieldSpec f = FieldSpec::rational();
  Polynomial a(f, {f.from_int(-1), f.zero(), f.one()});  // t^2 - 1
  Polynomial b(f, {f.from_int(1), f.one()});             // t + 1
  auto [q, r] = a.divmod(b);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q, Polynomial::linear(f.one()));
  EXPECT_EQ(gcd(a, Polynomial::linear(f.one()) * Polynomial::linear(f.from_int(3))), Polynomial::linear(f.one()));
  auto eg = extended_gcd(a, Polynomial::linear(f.from_int(2)));
  EXPECT_TRUE(eg.g.is_one());
  EXPECT_EQ(eg.s * a + eg.t * Polynomial::linear(f.from_int(2)), eg.g);
  EXPECT_EQ(a.to_string(), "t^2 - 1");
}

TEST(Polynomial, FactorizationReassemblesAndIsIrreducible) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldSpec f = FieldSpec::prime(p);
    for (int trial = 0; trial < 40; ++trial) {
      const int deg = 1 + static_cast<int>(rng() % 8);
      Vec c;
      for (int i = 0; i < deg; ++i) c.push_back(random_scalar(f, rng));
      c.push_back(f.one());
      Polynomial g(f, c);
      // Force repeated factors sometimes.
      if (trial % 3 == 0) g = g * Polynomial(f, {f.one(), f.one()}) * Polynomial(f, {f.one(), f.one()});
      auto factors = factor_over_prime_field(g, trial);
      Polynomial prod = Polynomial::constant(f.one());
      for (const auto& fc : factors) {
        EXPECT_EQ(fc.factor, fc.factor.monic());
        EXPECT_TRUE(brute_irreducible(fc.factor)) << fc.factor.to_string();
        for (unsigned k = 0; k < fc.multiplicity; ++k) prod = prod * fc.factor;
      }
      EXPECT_EQ(prod, g.monic()) << g.to_string();
      for (std::size_t i = 0; i + 1 < factors.size(); ++i) EXPECT_NE(factors[i].factor, factors[i + 1].factor);
    }
  }
}

TEST(Polynomial, FactorizationSeedIndependent) {
  const FieldSpec f = FieldSpec::prime(3);
  Polynomial g = Polynomial::monomial(f, 3) - Polynomial::monomial(f, 1);  // product of all linear factors
  auto a = factor_over_prime_field(g, 0), b = factor_over_prime_field(g, 42);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].factor, b[i].factor);
  EXPECT_THROW(factor_over_prime_field(Polynomial::monomial(FieldSpec::rational(), 2)), Unsupported);
}
