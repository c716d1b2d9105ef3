#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "modtrace/linalg.hpp"
#include "modtrace/matrix.hpp"
#include "modtrace/polynomial.hpp"

using namespace modtrace;

namespace {

// Leibniz expansion, used as an independent determinant.
Scalar leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar det = m.field().zero();
  do {
    Scalar term = m.field().one();
    for (std::size_t i = 0; i < n; ++i) term *= m.at(i, perm[i]);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    det += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::vector<FieldSpec> test_fields() {
  return {FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(101), FieldSpec::rational(),
          FieldSpec::cyclotomic(3)};
}

}  // namespace

TEST(Matrix, ApplyTensorMatchesKron) {
  std::mt19937_64 rng(5);
  for (const auto& f : test_fields()) {
    Matrix a = Matrix::random(f, 2, 3, rng), b = Matrix::random(f, 3, 2, rng), c = Matrix::random(f, 2, 2, rng);
    Matrix x = Matrix::random(f, 12, 3, rng);
    EXPECT_EQ(apply_tensor({a, b, c}, x), kron(kron(a, b), c) * x);
    Matrix id = Matrix::identity(f, 3);
    Matrix y = Matrix::random(f, 18, 2, rng);
    EXPECT_EQ(apply_tensor({a, id, c}, y), kron(kron(a, id), c) * y);
  }
}

TEST(Matrix, KronMixedProduct) {
  std::mt19937_64 rng(6);
  const FieldSpec f = FieldSpec::prime(5);
  Matrix a = Matrix::random(f, 2, 3, rng), b = Matrix::random(f, 3, 2, rng);
  Matrix c = Matrix::random(f, 3, 2, rng), d = Matrix::random(f, 2, 4, rng);
  EXPECT_EQ(kron(a, b) * kron(c, d), kron(a * c, b * d));
}

TEST(Linalg, CharpolyMatchesLeibnizAtSamplePoints) {
  std::mt19937_64 rng(7);
  for (const auto& f : test_fields()) {
    for (std::size_t n = 1; n <= 5; ++n) {
      Matrix m = Matrix::random(f, n, n, rng);
      Polynomial c = characteristic_polynomial(m);
      ASSERT_EQ(c.degree(), static_cast<int>(n));
      for (long long t = 0; t < 4; ++t) {
        Scalar s = f.from_int(t);
        EXPECT_EQ(c.evaluate(s), leibniz_det(Matrix::identity(f, n) * s - m)) << f.to_string();
      }
    }
  }
}

TEST(Linalg, MinimalPolynomialAnnihilatesAndDivides) {
  std::mt19937_64 rng(8);
  for (const auto& f : test_fields()) {
    Matrix m = Matrix::random(f, 4, 4, rng);
    // A matrix with repeated structure: direct sum with itself.
    Matrix d = direct_sum(m, m);
    Polynomial mp = minimal_polynomial(d);
    EXPECT_TRUE(mp.evaluate(d).is_zero());
    EXPECT_TRUE((characteristic_polynomial(d) % mp).is_zero());
    EXPECT_EQ(mp, minimal_polynomial(m));
  }
  const FieldSpec f = FieldSpec::rational();
  EXPECT_EQ(minimal_polynomial(Matrix::identity(f, 3) * f.from_int(2)), Polynomial::linear(f.from_int(2)));
}

TEST(Linalg, SolveInvertRank) {
  std::mt19937_64 rng(9);
  for (const auto& f : test_fields()) {
    Matrix a = Matrix::random(f, 4, 6, rng);
    Matrix x = Matrix::random(f, 6, 2, rng);
    auto sol = solve_linear(a, a * x);
    ASSERT_TRUE(sol.consistent());
    EXPECT_EQ(a * *sol.particular, a * x);
    EXPECT_TRUE((a * sol.kernel).is_zero());
    EXPECT_EQ(rank(a) + sol.kernel.cols(), 6u);
    Matrix sq = Matrix::random(f, 4, 4, rng);
    if (auto inv = invert(sq)) {
      EXPECT_TRUE((sq * *inv).is_identity());
      EXPECT_FALSE(leibniz_det(sq).is_zero());
    } else {
      EXPECT_TRUE(leibniz_det(sq).is_zero());
    }
  }
  const FieldSpec f = FieldSpec::prime(3);
  Matrix singular = Matrix::from_ints(f, {{1, 2}, {2, 1}});
  EXPECT_FALSE(invert(singular).has_value());
  EXPECT_FALSE(solve_linear(singular, Matrix::from_ints(f, {{1}, {0}})).consistent());
}

TEST(Linalg, Nilpotent) {
  const FieldSpec f = FieldSpec::prime(5);
  EXPECT_TRUE(is_nilpotent(Matrix::from_ints(f, {{0, 1, 3}, {0, 0, 2}, {0, 0, 0}})));
  EXPECT_FALSE(is_nilpotent(Matrix::from_ints(f, {{0, 1}, {1, 0}})));
}
