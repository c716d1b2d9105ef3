#include <gtest/gtest.h>

#include <random>

#include "modtrace/errors.hpp"
#include "modtrace/field.hpp"

using namespace modtrace;

TEST(Field, PrimeArithmeticMatchesIntegerModulo) {
  const FieldSpec f = FieldSpec::prime(7);
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b) {
      const int sum = ((a + b) % 7 + 7) % 7;
      const int prod = ((a * b) % 7 + 7) % 7;
      EXPECT_EQ((f.from_int(a) + f.from_int(b)).residue_value(), static_cast<unsigned>(sum));
      EXPECT_EQ((f.from_int(a) * f.from_int(b)).residue_value(), static_cast<unsigned>(prod));
      if (b % 7 != 0) EXPECT_EQ(f.from_int(a) / f.from_int(b) * f.from_int(b), f.from_int(a));
    }
  EXPECT_THROW(f.zero().inverse(), DivisionByZero);
}

TEST(Field, ParseNames) {
  EXPECT_EQ(FieldSpec::parse("F3"), FieldSpec::prime(3));
  EXPECT_EQ(FieldSpec::parse("GF(5)"), FieldSpec::prime(5));
  EXPECT_EQ(FieldSpec::parse("Q"), FieldSpec::rational());
  EXPECT_EQ(FieldSpec::parse("Q(zeta_3)"), FieldSpec::cyclotomic(3));
  EXPECT_THROW(FieldSpec::parse("F4"), MalformedInput);
  EXPECT_THROW(FieldSpec::parse("R"), MalformedInput);
}

TEST(Field, CyclotomicPolynomialsKnownValues) {
  auto as_ints = [](unsigned n) {
    std::vector<long> out;
    for (const auto& c : cyclotomic_polynomial(n)) out.push_back(c.get_si());
    return out;
  };
  EXPECT_EQ(as_ints(1), (std::vector<long>{-1, 1}));
  EXPECT_EQ(as_ints(3), (std::vector<long>{1, 1, 1}));
  EXPECT_EQ(as_ints(4), (std::vector<long>{1, 0, 1}));
  EXPECT_EQ(as_ints(6), (std::vector<long>{1, -1, 1}));
  EXPECT_EQ(as_ints(12), (std::vector<long>{1, 0, -1, 0, 1}));
  EXPECT_EQ(euler_totient(12), 4u);
}

TEST(Field, ZetaHasExactOrder) {
  for (unsigned l : {3u, 5u, 7u, 12u}) {
    const FieldSpec f = FieldSpec::cyclotomic(l);
    const Scalar z = f.zeta();
    for (unsigned k = 1; k < l; ++k) EXPECT_FALSE(z.pow(k).is_one()) << l << " " << k;
    EXPECT_TRUE(z.pow(l).is_one());
    // Sum of all l-th roots of unity vanishes.
    Scalar s = f.zero();
    for (unsigned k = 0; k < l; ++k) s += z.pow(k);
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(Field, CyclotomicInverseRandom) {
  const FieldSpec f = FieldSpec::cyclotomic(5);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    Scalar x = random_scalar(f, rng);
    if (x.is_zero()) continue;
    EXPECT_TRUE((x * x.inverse()).is_one());
  }
}

TEST(Field, ParseScalarRoundTrip) {
  const FieldSpec f = FieldSpec::cyclotomic(3);
  const Scalar z = f.zeta();
  EXPECT_EQ(f.parse_scalar("z^2"), -z - f.one());
  EXPECT_EQ(f.parse_scalar("-1/2*z + 3"), f.from_rational(mpq_class(-1, 2)) * z + f.from_int(3));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    Scalar x = random_scalar(f, rng);
    EXPECT_EQ(f.parse_scalar(x.to_string()), x);
  }
  const FieldSpec q = FieldSpec::rational();
  EXPECT_EQ(q.parse_scalar("6/4"), q.from_rational(mpq_class(3, 2)));
}

TEST(Field, MixingFieldsThrows) {
  EXPECT_THROW(FieldSpec::prime(3).one() + FieldSpec::prime(5).one(), FieldMismatch);
}
