#include <gtest/gtest.h>

#include "modtrace/builders.hpp"
#include "modtrace/errors.hpp"
#include "modtrace/hopf.hpp"
#include "modtrace/linalg.hpp"

using namespace modtrace;

namespace {

// Z/2 over F_3 written out by hand.
HopfData z2_data() {
  const FieldSpec f = FieldSpec::prime(3);
  HopfData d(f);
  d.name = "Z2";
  d.dim = 2;
  d.mult = {{0, 0, 0, f.one()}, {0, 1, 1, f.one()}, {1, 0, 1, f.one()}, {1, 1, 0, f.one()}};
  d.comult = {{0, 0, 0, f.one()}, {1, 1, 1, f.one()}};
  d.unit = {f.one(), f.zero()};
  d.counit = {f.one(), f.one()};
  d.antipode = Matrix::identity(f, 2);
  d.pivot = d.unit;
  d.generators = {1};
  return d;
}

}  // namespace

TEST(Hopf, HandWrittenGroupAlgebraValidates) {
  auto h = HopfPresentation::create(z2_data());
  EXPECT_TRUE(validate_hopf(*h).passed()) << validate_hopf(*h).summary();
  EXPECT_TRUE(validate_pivot(*h).passed());
  EXPECT_TRUE(is_unimodular(*h));
  auto left = integral_space(*h, Side::left);
  ASSERT_EQ(left.basis.size(), 1u);
  EXPECT_EQ(left.basis[0][0], left.basis[0][1]);  // multiple of 1 + g
}

TEST(Hopf, CorruptedMultiplicationFailsWithWitness) {
  HopfData d = z2_data();
  d.mult[3].k = 1;  // g g = g
  auto h = HopfPresentation::create(std::move(d));
  ValidationReport r = validate_hopf(*h);
  EXPECT_FALSE(r.passed());
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_FALSE(r.first_failure()->witness.empty());
}

TEST(Hopf, MalformedIndicesRejected) {
  HopfData d = z2_data();
  d.mult[0].k = 7;
  EXPECT_THROW(HopfPresentation::create(std::move(d)), MalformedInput);
}

TEST(Hopf, AntipodeProperties) {
  for (const Family& fam : {build_group_algebra(FieldSpec::prime(2), GroupTable::symmetric(3)),
                            build_restricted_usl2(3), build_sweedler(FieldSpec::prime(3)),
                            build_small_quantum_sl2(3)}) {
    const HopfPresentation& h = *fam.algebra;
    const FieldSpec& f = h.field();
    // S(1) = 1 and eps o S = eps
    EXPECT_EQ(h.apply_antipode(h.unit()), h.unit());
    for (std::size_t i = 0; i < h.dim(); ++i)
      EXPECT_EQ(h.apply_counit(h.apply_antipode(h.basis_vector(i))), h.counit()[i]);
    // (S (x) S) Delta = flip Delta S, compared as dim^2 coordinate vectors.
    const std::size_t n = h.dim();
    for (std::size_t i = 0; i < n; ++i) {
      Matrix lhs(f, n * n, 1), rhs(f, n * n, 1);
      for (const auto& t : h.coproduct(i)) {
        Vec a = h.apply_antipode(h.basis_vector(t.left)), b = h.apply_antipode(h.basis_vector(t.right));
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            if (!a[x].is_zero() && !b[y].is_zero()) lhs.add_at(x * n + y, 0, t.coeff * a[x] * b[y]);
      }
      Vec s = h.apply_antipode(h.basis_vector(i));
      for (std::size_t k = 0; k < n; ++k) {
        if (s[k].is_zero()) continue;
        for (const auto& t : h.coproduct(k)) rhs.add_at(t.right * n + t.left, 0, s[k] * t.coeff);
      }
      EXPECT_EQ(lhs, rhs) << h.name() << " basis " << i;
    }
  }
}

TEST(Hopf, UnimodularityVerdicts) {
  EXPECT_TRUE(is_unimodular(*build_group_algebra(FieldSpec::prime(2), GroupTable::symmetric(3)).algebra));
  EXPECT_TRUE(is_unimodular(*build_restricted_usl2(3).algebra));
  EXPECT_TRUE(is_unimodular(*build_drinfeld_double_group(FieldSpec::prime(2), GroupTable::cyclic(2)).algebra));
  EXPECT_FALSE(is_unimodular(*build_sweedler(FieldSpec::prime(3)).algebra));
  EXPECT_FALSE(is_unimodular(*build_sweedler(FieldSpec::rational()).algebra));
  // Sweedler: left integral x + gx direction, right integral x - gx direction (up to scale); they differ.
  auto h = build_sweedler(FieldSpec::prime(3)).algebra;
  auto l = integral_space(*h, Side::left), r = integral_space(*h, Side::right);
  EXPECT_NE(rank(Matrix::from_rows(h->field(), {l.basis[0], r.basis[0]})), 1u);
}

TEST(Hopf, PivotChecks) {
  // Small quantum sl2 with pivot 1 fails at E.
  auto fam = build_small_quantum_sl2(3);
  HopfData d = fam.algebra->data();
  d.pivot = d.unit;
  auto bad = HopfPresentation::create(std::move(d));
  ValidationReport r = validate_pivot(*bad);
  EXPECT_FALSE(r.passed());
  // The pivot K implements S^2(E) = K E K^-1 in the regular representation.
  const HopfPresentation& h = *fam.algebra;
  const std::size_t E = 9;
  Vec s2 = h.apply_antipode(h.apply_antipode(h.basis_vector(E)));
  Vec conj = h.multiply(h.multiply(h.pivot(), h.basis_vector(E)), h.pivot_inverse());
  EXPECT_EQ(s2, conj);
  EXPECT_EQ(h.antipode() * h.antipode(), h.antipode() * h.antipode());
  auto dbl = build_drinfeld_double_group(FieldSpec::prime(2), GroupTable::symmetric(3)).algebra;
  EXPECT_TRUE((dbl->antipode() * dbl->antipode()).is_identity());
}

TEST(Builders, DimensionsAndValidity) {
  EXPECT_EQ(build_restricted_usl2(3).algebra->dim(), 27u);
  EXPECT_EQ(build_restricted_usl2(3).module("St")->dim(), 3u);
  EXPECT_EQ(build_small_quantum_sl2(3).module("St")->dim(), 3u);
  EXPECT_EQ(build_drinfeld_double_group(FieldSpec::prime(2), GroupTable::symmetric(3)).algebra->dim(), 36u);
  EXPECT_THROW(build_restricted_usl2(2), Unsupported);
  EXPECT_THROW(build_small_quantum_sl2(4), MalformedInput);
  EXPECT_THROW(build_sweedler(FieldSpec::prime(2)), MalformedInput);
  EXPECT_THROW(GroupTable::named("Q8"), MalformedInput);
}

TEST(Builders, RestrictedCentralElementsVanishOnSimples) {
  // x^p - x^[p] for x = e, f, h: e^p, f^p, h^p - h act as zero.
  for (std::uint32_t p : {3u, 5u}) {
    auto fam = build_restricted_usl2(p);
    for (unsigned d = 0; d < p; ++d) {
      auto m = fam.module("L" + std::to_string(d));
      Matrix e = m->generator_action(0), f = m->generator_action(1), h = m->generator_action(2);
      Matrix ep = Matrix::identity(m->field(), m->dim()), fp = ep, hp = ep;
      for (std::uint32_t k = 0; k < p; ++k) {
        ep = ep * e;
        fp = fp * f;
        hp = hp * h;
      }
      EXPECT_TRUE(ep.is_zero());
      EXPECT_TRUE(fp.is_zero());
      EXPECT_EQ(hp, h);
    }
  }
}

TEST(Builders, QuantumSteinbergWeights) {
  auto fam = build_small_quantum_sl2(5);
  auto st = fam.module("St");
  const Matrix& k = st->generator_action(2);
  const Scalar z = st->field().zeta();
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(k.at(i, i), z.pow((4 + 10 - 2 * i) % 5));
}

TEST(Builders, GroupTables) {
  GroupTable s3 = GroupTable::named("S3");
  EXPECT_EQ(s3.order, 6u);
  validate_group(s3);
  GroupTable bad = s3;
  bad.table[1] = 0;
  EXPECT_THROW(validate_group(bad), InvalidHopfData);
  EXPECT_EQ(GroupTable::named("Z/5").order, 5u);
}
