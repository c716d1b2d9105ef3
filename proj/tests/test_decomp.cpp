#include <gtest/gtest.h>

#include <algorithm>

#include "modtrace/builders.hpp"
#include "modtrace/decomp.hpp"
#include "modtrace/errors.hpp"
#include "modtrace/linalg.hpp"

using namespace modtrace;

namespace {

// Every element of a small algebra over F_p given by a basis.
std::vector<Matrix> all_elements(const std::vector<Morphism>& basis, std::uint32_t p) {
  const FieldSpec f = FieldSpec::prime(p);
  const std::size_t n = basis.front().matrix().rows();
  std::vector<Matrix> out;
  std::vector<std::uint32_t> digits(basis.size(), 0);
  while (true) {
    Matrix x(f, n, n);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (digits[k] != 0) x += basis[k].matrix() * f.from_int(digits[k]);
    out.push_back(x);
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return out;
}

// Brute-force radical dimension: x is radical iff x y is nilpotent for all y.
std::size_t brute_radical_dim(const ModulePtr& m) {
  const auto basis = hom_basis(m, m).basis;
  const auto elems = all_elements(basis, m->field().p());
  std::vector<Matrix> rad;
  for (const auto& x : elems) {
    bool ok = true;
    for (const auto& y : elems)
      if (!is_nilpotent(x * y)) {
        ok = false;
        break;
      }
    if (ok) rad.push_back(x);
  }
  std::size_t size = rad.size(), dim = 0;
  while (size > 1) {
    size /= m->field().p();
    ++dim;
  }
  return dim;
}

ModulePtr direct_sum_module(const ModulePtr& a, const ModulePtr& b) {
  std::vector<Matrix> gens;
  for (std::size_t s = 0; s < a->generator_actions().size(); ++s)
    gens.push_back(direct_sum(a->generator_action(s), b->generator_action(s)));
  return ModuleRep::from_generator_actions(a->algebra(), a->label() + "+" + b->label(), gens);
}

Family s3() { return build_group_algebra(FieldSpec::prime(2), GroupTable::symmetric(3)); }

std::vector<std::size_t> sorted_dims(const DecompositionResult& d) {
  auto v = d.dims();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Radical, MatchesBruteForce) {
  auto g = s3();
  auto c2 = build_group_algebra(FieldSpec::prime(2), GroupTable::cyclic(2));
  auto sw = build_sweedler(FieldSpec::prime(3));
  const std::vector<ModulePtr> cases = {g.module("regular"), c2.module("regular"), sw.module("regular"),
                                        direct_sum_module(g.module("N"), g.module("N")),
                                        direct_sum_module(g.module("trivial"), g.module("N"))};
  for (const auto& m : cases) {
    EndAlgebra end(m);
    EXPECT_EQ(radical_basis(end).size(), brute_radical_dim(m)) << m->label();
  }
}

TEST(Radical, IsAnIdealOfNilpotents) {
  auto fam = build_restricted_usl2(3);
  ModulePtr m = tensor_modules(fam.module("L1"), fam.module("L1"));
  m = direct_sum_module(m, fam.module("L0"));
  EndAlgebra end(m);
  auto rad = radical_basis(end);
  for (const auto& r : rad) {
    EXPECT_TRUE(is_nilpotent(r));
    for (const auto& b : end.basis()) {
      EXPECT_NO_THROW(end.coordinates(r * b.matrix()));
      EXPECT_TRUE(is_nilpotent(r * b.matrix()));
    }
  }
}

TEST(EndAlgebra, CoordinatesRoundTrip) {
  auto g = s3();
  EndAlgebra end(g.module("regular"));
  EXPECT_EQ(end.dim(), 6u);
  for (std::size_t i = 0; i < end.dim(); ++i)
    for (std::size_t j = 0; j < end.dim(); ++j)
      EXPECT_EQ(end.element(end.product(i, j)), end.basis()[i].matrix() * end.basis()[j].matrix());
  EXPECT_THROW(end.coordinates(Matrix::identity(FieldSpec::prime(2), 6) * FieldSpec::prime(2).one() +
                               Matrix::from_ints(FieldSpec::prime(2), {{0, 1, 0, 0, 0, 0},
                                                                       {0, 0, 0, 0, 0, 0},
                                                                       {0, 0, 0, 0, 0, 0},
                                                                       {0, 0, 0, 0, 0, 0},
                                                                       {0, 0, 0, 0, 0, 0},
                                                                       {0, 0, 0, 0, 0, 0}})),
               InternalError);
}

TEST(Decompose, RegularS3MatchesIdempotentEnumeration) {
  auto g = s3();
  ModulePtr reg = g.module("regular");

  // Oracle: primitive idempotents of End(kS3) by enumeration.
  const auto basis = hom_basis(reg, reg).basis;
  const auto elems = all_elements(basis, 2);
  std::vector<Matrix> idem;
  for (const auto& x : elems)
    if (!x.is_zero() && x * x == x) idem.push_back(x);
  std::vector<Matrix> primitive;
  for (const auto& e : idem) {
    bool prim = true;
    for (const auto& f : idem)
      if (f != e && e * f == f && f * e == f) prim = false;
    if (prim) primitive.push_back(e);
  }
  ASSERT_FALSE(primitive.empty());
  for (const auto& e : primitive) EXPECT_EQ(rank(e), 2u);
  bool complete_set = false;
  for (std::size_t a = 0; a < primitive.size() && !complete_set; ++a)
    for (std::size_t b = a + 1; b < primitive.size() && !complete_set; ++b)
      for (std::size_t c = b + 1; c < primitive.size() && !complete_set; ++c) {
        const auto &x = primitive[a], &y = primitive[b], &z = primitive[c];
        if ((x * y).is_zero() && (y * x).is_zero() && (x * z).is_zero() && (z * x).is_zero() &&
            (y * z).is_zero() && (z * y).is_zero() && (x + y + z).is_identity())
          complete_set = true;
      }
  EXPECT_TRUE(complete_set);

  auto one = g.module("trivial");
  for (std::uint64_t seed : {0u, 1u, 7u}) {
    auto d = decompose(reg, seed);
    EXPECT_EQ(check_decomposition(d), std::nullopt);
    EXPECT_EQ(sorted_dims(d), (std::vector<std::size_t>{2, 2, 2}));
    EXPECT_TRUE(d.fully_certified());
    std::vector<std::size_t> with_invariants;
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(rank(d.summands[k].idempotent), 2u);
      if (hom_basis(one, d.summands[k].module).dim() > 0) with_invariants.push_back(k);
    }
    ASSERT_EQ(with_invariants.size(), 1u);
    EXPECT_EQ(hom_basis(one, d.summands[with_invariants[0]].module).dim(), 1u);
    std::vector<ModulePtr> rest;
    for (std::size_t k = 0; k < 3; ++k)
      if (k != with_invariants[0]) rest.push_back(d.summands[k].module);
    EXPECT_EQ(iso_test(rest[0], rest[1], seed).verdict, IsoResult::Verdict::isomorphic);
    EXPECT_EQ(iso_test(rest[0], g.module("N"), seed).verdict, IsoResult::Verdict::isomorphic);
  }
}

TEST(Decompose, SeedIndependentUpToIsomorphism) {
  auto fam = build_restricted_usl2(3);
  ModulePtr m = tensor_modules(fam.module("L1"), dual_module(fam.module("L2")));
  auto a = decompose(m, 0), b = decompose(m, 1);
  ASSERT_EQ(sorted_dims(a), sorted_dims(b));
  std::vector<bool> used(b.summands.size(), false);
  for (const auto& s : a.summands) {
    bool matched = false;
    for (std::size_t k = 0; k < b.summands.size() && !matched; ++k) {
      if (used[k]) continue;
      if (iso_test(s.module, b.summands[k].module, 0, true).verdict == IsoResult::Verdict::isomorphic)
        used[k] = matched = true;
    }
    EXPECT_TRUE(matched) << s.module->label();
  }
}

TEST(Decompose, KnownSplittings) {
  auto fam = build_restricted_usl2(3);
  auto d = decompose(tensor_modules(fam.module("L1"), fam.module("L1")));
  EXPECT_EQ(check_decomposition(d), std::nullopt);
  EXPECT_EQ(sorted_dims(d), (std::vector<std::size_t>{1, 3}));
  EXPECT_TRUE(d.fully_certified());

  auto sw = build_sweedler(FieldSpec::prime(3));
  auto r = decompose(sw.module("regular"));
  EXPECT_EQ(check_decomposition(r), std::nullopt);
  EXPECT_EQ(sorted_dims(r), (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(r.fully_certified());

  auto g = s3();
  auto nn = decompose(direct_sum_module(g.module("N"), g.module("N")));
  EXPECT_EQ(sorted_dims(nn), (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(nn.fully_certified());
}

TEST(Decompose, NonSplitSimpleIsFlagged) {
  auto c3 = build_group_algebra(FieldSpec::prime(2), GroupTable::cyclic(3));
  auto d = decompose(c3.module("regular"));
  EXPECT_EQ(check_decomposition(d), std::nullopt);
  ASSERT_EQ(sorted_dims(d), (std::vector<std::size_t>{1, 2}));
  for (const auto& s : d.summands) {
    if (s.module->dim() == 1) {
      EXPECT_EQ(s.status, SummandStatus::certified);
    } else {
      EXPECT_EQ(s.status, SummandStatus::not_absolutely_indecomposable);
      EXPECT_THROW(require_absolutely_simple(s.module), NotAbsolutelySimple);
    }
  }
  EXPECT_FALSE(d.fully_certified());
}

TEST(Decompose, RejectsNonPrimeFields) {
  auto q = build_small_quantum_sl2(3);
  EXPECT_THROW(decompose(q.module("St")), Unsupported);
}

TEST(Decompose, LocatesUnitSummands) {
  auto g = s3();
  auto u = build_restricted_usl2(3);
  for (const ModulePtr& v : {g.module("N"), g.module("trivial"), u.module("L1"), u.module("L2")}) {
    Duality du = duality_morphisms(v);
    auto d = decompose(tensor_modules(v, du.dual));
    ASSERT_EQ(check_decomposition(d), std::nullopt);
    std::size_t j = 0, jp = 0;
    ASSERT_NO_THROW(j = locate_j(du, d)) << v->label();
    ASSERT_NO_THROW(jp = locate_jprime(du, d)) << v->label();
    EXPECT_LT(j, d.summands.size());
    EXPECT_LT(jp, d.summands.size());
  }
}

TEST(Decompose, ProjectiveCoverOfUnit) {
  auto g = s3();
  auto pc = projective_cover_unit(g.algebra);
  EXPECT_EQ(pc.summand.module->dim(), 2u);
  EXPECT_TRUE(pc.socle_is_trivial);

  auto sw = build_sweedler(FieldSpec::prime(3));
  auto ps = projective_cover_unit(sw.algebra);
  EXPECT_EQ(ps.summand.module->dim(), 2u);
  EXPECT_FALSE(ps.socle_is_trivial);

  auto u = build_restricted_usl2(3);
  auto pu = projective_cover_unit(u.algebra);
  EXPECT_TRUE(pu.socle_is_trivial);
  EXPECT_EQ(check_decomposition(pu.regular), std::nullopt);
}
