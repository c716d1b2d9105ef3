// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "modtrace/ambitrace.hpp"
#include "modtrace/builders.hpp"
#include "modtrace/errors.hpp"
#include "modtrace/linalg.hpp"

using namespace modtrace;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Entry {
  std::string name;
  ModulePtr module;
  bool structural;
};

struct Fixtures {
  Family s3 = build_group_algebra(FieldSpec::prime(2), GroupTable::symmetric(3));
  Family u3 = build_restricted_usl2(3);
  Family u5 = build_restricted_usl2(5);
  Family q3 = build_small_quantum_sl2(3);
  Family sweedler = build_sweedler(FieldSpec::prime(3));
  Family double_s3 = build_drinfeld_double_group(FieldSpec::prime(2), GroupTable::symmetric(3));

  std::vector<Entry> battery() const {
    std::vector<Entry> out;
    out.push_back({"kS3/F2 trivial", s3.module("trivial"), true});
    out.push_back({"kS3/F2 N", s3.module("N"), true});
    for (const Family* f : {&u3, &u5}) {
      const unsigned p = f->algebra->field().p();
      for (unsigned d = 0; d < p; ++d)
        out.push_back({"u(sl2) p=" + std::to_string(p) + " L" + std::to_string(d), f->module("L" + std::to_string(d)), true});
    }
    out.push_back({"u_zeta(sl2) l=3 St", q3.module("St"), false});
    return out;
  }
};

Matrix random_end(const HomSpace& h, std::mt19937_64& rng) { return random_combination(h.basis, rng).matrix(); }

// Indecomposable projectives up to isomorphism, from the regular module.
std::vector<ModulePtr> projectives(const HopfPtr& h, std::uint64_t seed) {
  DecompositionResult d = decompose(regular_module(h), seed);
  std::vector<ModulePtr> out;
  for (const auto& s : d.summands) {
    bool dup = false;
    for (const auto& m : out)
      if (iso_test(m, s.module, seed, true).verdict == IsoResult::Verdict::isomorphic) dup = true;
    if (!dup) out.push_back(s.module);
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome criterion1(const Fixtures& fx) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int compared = 0, direct_only = 0, uncertified = 0;
  for (const auto& e : fx.battery()) {
    AmbiVerdict d = ambi_direct(e.module);
    if (!e.structural) {
      ++direct_only;
      o.detail << " " << e.name << "=" << *d.direct;
      continue;
    }
    try {
      AmbiVerdict s = ambi_structural(e.module);
      ++compared;
      o.require(*s.structural == *d.direct, e.name + " direct/structural disagree");
    } catch (const UncertifiedDecomposition&) {
      ++uncertified;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 120.0, "runtime over 2 minutes");
  o.detail << " compared=" << compared << " direct_only=" << direct_only << " uncertified=" << uncertified
           << " disagreements=0 runtime<2min";
  return o;
}

Outcome criterion2(const Fixtures& fx) {
  Outcome o;
  for (const Family* f : {&fx.u3, &fx.u5}) {
    const std::string tag = "u(sl2) p=" + std::to_string(f->algebra->field().p());
    o.require(is_unimodular(*f->algebra), tag + " unimodular");
    o.require(*ambi_direct(f->module("St")).direct, tag + " St ambi");
  }
  o.require(is_unimodular(*fx.s3.algebra), "kS3 unimodular");
  bool n_projective = false;
  for (const auto& s : decompose(regular_module(fx.s3.algebra)).summands)
    if (iso_test(s.module, fx.s3.module("N")).verdict == IsoResult::Verdict::isomorphic) n_projective = true;
  o.require(n_projective, "N is a summand of the regular module");
  o.require(*ambi_direct(fx.s3.module("N")).direct, "kS3 N ambi");
  o.require(!is_unimodular(*fx.sweedler.algebra), "Sweedler integral route non-unimodular");
  o.require(!projective_cover_unit(fx.sweedler.algebra).socle_is_trivial, "Sweedler socle route non-unimodular");
  o.require(is_unimodular(*fx.double_s3.algebra), "D(kS3) unimodular");
  o.require(projective_cover_unit(fx.double_s3.algebra).socle_is_trivial, "D(kS3) socle route");
  o.detail << " u(sl2) p=3,5 unimodular+St ambi; kS3 unimodular+N ambi; Sweedler non-unimodular (2 routes); D(kS3) unimodular";
  return o;
}

Outcome criterion3(const Fixtures& fx) {
  Outcome o;
  {
    TraceFunctional t(fx.s3.module("N"));
    ModulePtr p1 = projective_cover_unit(fx.s3.algebra).summand.module;
    ModulePtr n = fx.s3.module("N");
    AxiomReport r = verify_trace_axioms(t, {n, p1, tensor_modules(n, n), regular_module(fx.s3.algebra)},
                                        {fx.s3.module("trivial"), n, p1, fx.s3.module("perm")}, 0, 100);
    o.require(r.count(AxiomSample::Kind::partial_trace) == 100 && r.count(AxiomSample::Kind::cyclicity) == 100,
              "kS3 sample counts");
    o.require(r.all_zero(), "kS3 residuals");
    o.detail << " kS3/F2: " << r.samples.size() << " samples, " << r.failures() << " nonzero residuals;";
  }
  {
    TraceFunctional t(fx.u3.module("St"));
    std::vector<ModulePtr> ideal = projectives(fx.u3.algebra, 0);
    ideal.push_back(tensor_modules(fx.u3.module("St"), fx.u3.module("L1")));
    AxiomReport r = verify_trace_axioms(t, ideal, {fx.u3.module("L0"), fx.u3.module("L1"), fx.u3.module("St")}, 0, 100);
    o.require(r.count(AxiomSample::Kind::partial_trace) == 100 && r.count(AxiomSample::Kind::cyclicity) == 100,
              "u(sl2) sample counts");
    o.require(r.all_zero(), "u(sl2) residuals");
    o.detail << " u(sl2) p=3: " << r.samples.size() << " samples, " << r.failures() << " nonzero residuals";
  }
  return o;
}

void uniqueness_for(const Family& fam, const std::string& ambi, Outcome& o) {
  TraceFunctional t(fam.module(ambi));
  std::vector<ModulePtr> p0 = projectives(fam.algebra, 0), p1 = projectives(fam.algebra, 1);
  o.require(p0.size() == p1.size(), fam.algebra->name() + " projective count differs across seeds");
  std::mt19937_64 rng(2024);
  for (const auto& p : p0) {
    const Splitting& s = t.splitting(p);
    o.require(s.alternative_alpha.has_value(), "second splitting for " + p->label());
    if (!s.alternative_alpha) continue;
    const Matrix& a1 = s.alpha.matrix();
    const Matrix& a2 = s.alternative_alpha->matrix();
    o.require(a1 != a2, "alpha solutions differ");
    const Matrix id = Matrix::identity(p->field(), p->dim());
    const Scalar d = t.trace_via_alpha(s, a1, id, p);
    o.require(d == t.trace_via_alpha(s, a2, id, p), "modified dimension across splittings");

    // The isomorphic summand found with seed 1, and the transport of endomorphisms.
    std::optional<Morphism> iso;
    for (const auto& q : p1) {
      IsoResult r = iso_test(p, q, 0, true);
      if (r.verdict == IsoResult::Verdict::isomorphic) iso = r.iso;
    }
    o.require(iso.has_value(), "isomorphic projective for seed 1");
    if (!iso) continue;
    const Matrix phi = iso->matrix();
    const Matrix phi_inv = invert(phi).value();
    o.require(t.dimension(iso->target()) == d, "modified dimension across seeds");

    HomSpace end = hom_basis(p, p);
    for (int k = 0; k < 20; ++k) {
      Matrix f = random_end(end, rng);
      const Scalar v = t.trace_via_alpha(s, a1, f, p);
      o.require(v == t.trace_via_alpha(s, a2, f, p), "trace across splittings");
      o.require(v == t.trace(iso->target(), phi * f * phi_inv), "trace across seeds");
    }
    o.detail << " " << fam.algebra->name() << " P(dim " << p->dim() << ") d=" << d.to_string() << ";";
  }
}

Outcome criterion4(const Fixtures& fx) {
  Outcome o;
  uniqueness_for(fx.s3, "N", o);
  uniqueness_for(fx.u3, "St", o);
  return o;
}

Outcome criterion5(const Fixtures& fx) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& e : fx.battery()) {
    const ModulePtr& v = e.module;
    const FieldSpec& f = v->field();
    const std::size_t d = v->dim();
    const Matrix id = Matrix::identity(f, d);
    Duality du = duality_morphisms(v);
    const Matrix &coev = du.coev.matrix(), &ev = du.ev.matrix(), &coevt = du.coev_tilde.matrix(),
                 &evt = du.ev_tilde.matrix();
    // Zig-zags.
    o.require(apply_tensor({id, ev}, apply_tensor({coev, id}, id)).is_identity(), e.name + " zig-zag V");
    o.require(apply_tensor({ev, id}, apply_tensor({id, coev}, id)).is_identity(), e.name + " zig-zag V*");
    o.require(apply_tensor({id, evt}, apply_tensor({coevt, id}, id)).is_identity(), e.name + " zig-zag~ V*");
    o.require(apply_tensor({evt, id}, apply_tensor({id, coevt}, id)).is_identity(), e.name + " zig-zag~ V");

    // Identity lines, with phi, gamma and dual morphisms built as composites.
    const Matrix phi = pivotal_phi_composite(v);
    const Matrix phi_inv = invert(phi).value();
    const Matrix g = gamma_composite(v, du.dual);
    const std::optional<Matrix> g_inv = invert(g);
    o.require(g_inv.has_value(), e.name + " gamma invertible");
    o.require(g == gamma_prime_composite(v, du.dual), e.name + " gamma = gamma'");
    o.require(gamma_composite(du.dual, v) == gamma_prime_composite(du.dual, v), e.name + " gamma' on (V*, V)");
    Duality dd = duality_morphisms(du.dual);
    const Matrix evt_dual = dual_morphism_composite(du.ev_tilde);  // 1* -> (V (x) V*)*
    const Matrix coev_dual = dual_morphism_composite(du.coev);     // (V (x) V*)* -> 1*
    const Matrix line1a = dd.coev_tilde.matrix();
    const Matrix line1b = kron(phi, id) * coev;
    o.require(line1a == line1b, e.name + " coev~_{V*} = (phi (x) Id) coev");
    if (g_inv) o.require(line1a == *g_inv * evt_dual, e.name + " coev~_{V*} = (ev~)*");
    const Matrix line2a = dd.ev.matrix();
    const Matrix line2b = evt * kron(phi_inv, id);
    o.require(line2a == line2b, e.name + " ev_{V*} = ev~ (phi^-1 (x) Id)");
    o.require(line2a == coev_dual * g, e.name + " ev_{V*} = (coev)*");
    o.require(phi == pivotal_phi(v).matrix(), e.name + " phi composite");
    ++checked;
  }

  // Gamma on mixed pairs within an algebra.
  auto s3n = fx.s3.module("N"), s3t = fx.s3.module("trivial");
  auto u1 = fx.u3.module("L1"), u2 = fx.u3.module("L2");
  for (auto [a, b] : {std::pair{s3n, s3t}, std::pair{u1, u2}, std::pair{u2, u1}}) {
    Matrix g = gamma_composite(a, b);
    o.require(invert(g).has_value() && g == gamma_prime_composite(a, b), "gamma on " + a->label() + "," + b->label());
  }

  // Naturality of phi: f** phi_V = phi_W f.
  std::mt19937_64 rng(5);
  std::vector<std::pair<ModulePtr, ModulePtr>> pairs;
  for (const Family* fam : {&fx.s3, &fx.u3, &fx.u5}) {
    std::vector<ModulePtr> mods;
    for (const auto& name : fam->simples) mods.push_back(fam->module(name));
    mods.push_back(tensor_modules(mods.back(), dual_module(mods.back())));
    mods.push_back(tensor_modules(mods[1 % mods.size()], mods.back()));
    for (const auto& a : mods)
      for (const auto& b : mods)
        if (hom_basis(a, b).dim() > 0) pairs.emplace_back(a, b);
  }
  pairs.emplace_back(fx.q3.module("St"), fx.q3.module("St"));
  int samples = 0;
  for (int k = 0; k < 50; ++k) {
    const auto& [a, b] = pairs[k % pairs.size()];
    HomSpace h = hom_basis(a, b);
    Morphism fm = random_combination(h.basis, rng);
    Morphism fdual(dual_module(b), dual_module(a), dual_morphism_composite(fm));
    Matrix fdd = dual_morphism_composite(fdual);
    o.require(fdd * pivotal_phi_composite(a) == pivotal_phi_composite(b) * fm.matrix(),
              "phi naturality " + a->label() + " -> " + b->label());
    ++samples;
  }
  o.detail << " " << checked << " battery modules (zig-zags, identity lines, gamma = gamma'); " << samples
           << " naturality samples";
  return o;
}

// Oracle: all idempotents of End(kS3) over F2 by enumeration of the 2^6 elements.
bool regular_s3_oracle(const ModulePtr& reg) {
  const auto basis = hom_basis(reg, reg).basis;
  const FieldSpec f = FieldSpec::prime(2);
  std::vector<Matrix> idem;
  for (unsigned mask = 1; mask < (1u << basis.size()); ++mask) {
    Matrix x(f, reg->dim(), reg->dim());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (mask >> k & 1u) x += basis[k].matrix();
    if (x * x == x) idem.push_back(x);
  }
  std::vector<Matrix> primitive;
  for (const auto& e : idem) {
    bool prim = true;
    for (const auto& g : idem)
      if (g != e && e * g == g && g * e == g) prim = false;
    if (prim) primitive.push_back(e);
  }
  for (const auto& e : primitive)
    if (rank(e) != 2) return false;
  for (std::size_t a = 0; a < primitive.size(); ++a)
    for (std::size_t b = a + 1; b < primitive.size(); ++b)
      for (std::size_t c = b + 1; c < primitive.size(); ++c) {
        const auto &x = primitive[a], &y = primitive[b], &z = primitive[c];
        if ((x * y).is_zero() && (y * x).is_zero() && (x * z).is_zero() && (z * x).is_zero() && (y * z).is_zero() &&
            (z * y).is_zero() && (x + y + z).is_identity())
          return true;
      }
  return false;
}

Outcome criterion6(const Fixtures& fx) {
  Outcome o;
  ModulePtr reg = regular_module(fx.s3.algebra);
  ModulePtr one = fx.s3.module("trivial");
  o.require(regular_s3_oracle(reg), "idempotent enumeration oracle predicts three rank-2 summands");
  std::vector<ModulePtr> first;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    DecompositionResult d = decompose(reg, seed);
    auto dims = d.dims();
    std::sort(dims.begin(), dims.end());
    o.require(dims == std::vector<std::size_t>{2, 2, 2}, "dims {2,2,2}");
    o.require(!check_decomposition(d).has_value() && d.fully_certified(), "certified decomposition");
    std::vector<ModulePtr> cover, others;
    for (const auto& s : d.summands) (hom_basis(one, s.module).dim() > 0 ? cover : others).push_back(s.module);
    o.require(cover.size() == 1 && others.size() == 2, "one summand with invariants");
    if (cover.size() != 1 || others.size() != 2) continue;
    o.require(hom_basis(one, cover[0]).dim() == 1, "dim Hom(1, P_1) = 1");
    o.require(iso_test(others[0], others[1], seed).verdict == IsoResult::Verdict::isomorphic, "two isomorphic summands");
    std::vector<ModulePtr> cur = {cover[0], others[0]};
    if (first.empty()) {
      first = cur;
    } else {
      for (std::size_t k = 0; k < 2; ++k)
        o.require(iso_test(first[k], cur[k], seed, true).verdict == IsoResult::Verdict::isomorphic,
                  "seed-independent up to isomorphism");
    }
  }
  o.detail << " dims {2,2,2}, P_1 with dim Hom(1,P_1)=1, two isomorphic copies of N; seeds 0,1,2 agree";
  return o;
}

Outcome criterion7(const Fixtures& fx) {
  Outcome o;
  std::size_t modules = 0;
  for (const auto& e : fx.battery()) {
    if (!e.structural) continue;
    const ModulePtr& v = e.module;
    Duality du = duality_morphisms(v);
    DecompositionResult d = decompose(tensor_modules(v, du.dual));
    ModulePtr one = trivial_module(v->algebra());
    std::size_t from_unit = 0, to_unit = 0;
    for (const auto& s : d.summands) {
      from_unit += hom_basis(one, s.module).dim() > 0;
      to_unit += hom_basis(s.module, one).dim() > 0;
    }
    o.require(from_unit == 1, e.name + " exactly one summand with Hom(1, W) != 0");
    o.require(to_unit == 1, e.name + " exactly one summand with Hom(W, 1) != 0");
    const std::size_t j = locate_j(du, d), jp = locate_jprime(du, d);
    const Summand& wj = d.summands[j];
    const Summand& wjp = d.summands[jp];
    const Matrix pj_coev = wj.projection.matrix() * du.coev.matrix();
    for (const auto& r : radical_basis(EndAlgebra(wj.module)))
      o.require((r * pj_coev).is_zero(), e.name + " radical annihilates p_j coev");
    const Matrix evt_ij = du.ev_tilde.matrix() * wjp.inclusion.matrix();
    for (const auto& r : radical_basis(EndAlgebra(wjp.module)))
      o.require((evt_ij * r).is_zero(), e.name + " radical annihilates ev~ i_j'");
    ++modules;
  }
  o.detail << " " << modules << " modules: unique unit summands, radical annihilation on both sides";
  return o;
}

Outcome criterion8(const Fixtures& fx) {
  Outcome o;
  ModulePtr p1 = projective_cover_unit(fx.s3.algebra).summand.module;
  const Scalar categorical = pivotal_trace(Morphism::identity(p1));
  o.require(categorical.is_zero(), "categorical trace of Id_{P_1} is 0");
  TraceFunctional t(fx.s3.module("N"));
  const Scalar d = t.dimension(p1);
  o.detail << " kS3/F2 P_1: categorical trace = " << categorical.to_string() << ", modified dimension = "
           << d.to_string();
  return o;
}

}  // namespace

int main() {
  Fixtures fx;
  const std::vector<std::pair<int, std::function<Outcome(const Fixtures&)>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  int failures = 0;
  for (const auto& [n, fn] : criteria) {
    Outcome o;
    try {
      o = fn(fx);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::cout << "criterion " << n << ": " << (o.passed ? "PASS" : "FAIL") << " -" << o.detail.str() << std::endl;
    failures += !o.passed;
  }
  return failures == 0 ? 0 : 1;
}
