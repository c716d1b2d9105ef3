#include "modtrace/ambitrace.hpp"

#include <random>
#include <utility>

#include "modtrace/errors.hpp"
#include "modtrace/linalg.hpp"

namespace modtrace {

namespace {

Scalar ratio_or_throw(const Matrix& a, const Matrix& b, const char* what) {
  auto s = proportionality(a, b);
  if (!s) throw InternalError(std::string(what) + " is not a multiple of the reference map");
  return *s;
}

// f coev_V against (phi^-1 (x) Id) gamma^-1 f* gamma coev~_{V*}, all as matrices.
bool raw_equation_holds(const ModulePtr& v, const Duality& du, const Matrix& f) {
  const FieldSpec& fs = v->field();
  Matrix lhs = f * du.coev.matrix();
  Duality dd = duality_morphisms(du.dual);
  Matrix g = gamma(v, du.dual).matrix();
  Matrix g_inv = invert(g).value();
  Matrix phi_inv = kron(v->pivot_inverse_action(), Matrix::identity(fs, v->dim()));
  Matrix rhs = phi_inv * g_inv * f.transpose() * g * dd.coev_tilde.matrix();
  return lhs == rhs;
}

}  // namespace

AmbiVerdict ambi_direct(const ModulePtr& v, std::uint64_t seed) {
  require_absolutely_simple(v);
  AmbiVerdict out;
  out.module = v;
  Duality du = duality_morphisms(v);
  const Matrix& coev = du.coev.matrix();
  const Matrix& evt = du.ev_tilde.matrix();
  HomSpace end = hom_basis(tensor_modules(v, du.dual), tensor_modules(v, du.dual));
  for (std::size_t k = 0; k < end.dim(); ++k) {
    const Matrix& f = end.basis[k].matrix();
    out.lambda.push_back(ratio_or_throw(f * coev, coev, "f coev"));
    out.mu.push_back(ratio_or_throw(evt * f, evt, "ev~ f"));
    if (!out.witness && out.lambda.back() != out.mu.back()) out.witness = k;
  }
  out.direct = !out.witness.has_value();

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> audited{static_cast<std::size_t>(rng() % end.dim())};
  if (out.witness) audited.push_back(*out.witness);
  for (std::size_t k : audited) {
    const bool agrees = out.lambda[k] == out.mu[k];
    if (raw_equation_holds(v, du, end.basis[k].matrix()) != agrees) out.audit_consistent = false;
  }
  return out;
}

AmbiVerdict ambi_structural(const ModulePtr& v, std::uint64_t seed) {
  if (!v->field().is_prime()) throw Unsupported("structural ambidexterity test needs a prime field");
  require_absolutely_simple(v);
  AmbiVerdict out;
  out.module = v;
  Duality du = duality_morphisms(v);
  DecompositionResult d = decompose(tensor_modules(v, du.dual), seed);
  out.summand_dims = d.dims();
  if (!d.fully_certified()) {
    std::string msg = "decomposition of V (x) V* is not certified:";
    for (const auto& s : d.summands) msg += " " + to_string(s.status);
    throw UncertifiedDecomposition(msg);
  }
  if (auto err = check_decomposition(d)) throw InternalError("decomposition check failed: " + *err);
  out.j = locate_j(du, d);
  out.jprime = locate_jprime(du, d);
  out.structural = *out.j == *out.jprime;

  const ModulePtr& wj = d.summands[*out.j].module;
  IsoResult iso = iso_test(dual_module(wj), wj, seed, true);
  if (iso.verdict == IsoResult::Verdict::isomorphic) {
    out.self_dual = true;
    out.self_dual_certificate = iso.iso;
  } else if (iso.verdict == IsoResult::Verdict::not_isomorphic) {
    out.self_dual = false;
  }
  return out;
}

AmbiVerdict decide_ambi(const ModulePtr& v, AmbiMethod method, std::uint64_t seed) {
  if (method == AmbiMethod::direct) return ambi_direct(v, seed);
  if (method == AmbiMethod::structural) {
    return ambi_structural(v, seed);
  }
  AmbiVerdict out = ambi_direct(v, seed);
  try {
    AmbiVerdict s = ambi_structural(v, seed);
    out.structural = s.structural;
    out.j = s.j;
    out.jprime = s.jprime;
    out.summand_dims = std::move(s.summand_dims);
    out.self_dual = s.self_dual;
    out.self_dual_certificate = std::move(s.self_dual_certificate);
  } catch (const UncertifiedDecomposition& e) {
    out.structural_note = e.what();
  } catch (const Unsupported& e) {
    out.structural_note = e.what();
  }
  return out;
}

// ---------------------------------------------------------------------------

Splitting split_through(const ModulePtr& v, const ModulePtr& u) {
  if (v->algebra() != u->algebra() && v->algebra()->fingerprint() != u->algebra()->fingerprint())
    throw DimensionMismatch("modules over different algebras");
  Duality du = duality_morphisms(v);
  const Matrix& evt = du.ev_tilde.matrix();
  if (evt.is_zero()) throw DegenerateEv("ev~ of '" + v->label() + "' is the zero map");
  const FieldSpec& f = v->field();
  const std::size_t n = u->dim();

  ModulePtr w = tensor_modules(du.dual, u);
  ModulePtr vw = tensor_modules(v, w);
  Morphism beta(vw, u, kron(evt, Matrix::identity(f, n)));

  HomSpace hom = hom_basis(u, vw);
  // Unknown coordinates c with beta (sum c_k h_k) = Id_U.
  std::vector<Matrix> cols;
  for (const auto& h : hom.basis) cols.push_back((beta.matrix() * h.matrix()).vectorize());
  Matrix target = Matrix::identity(f, n).vectorize();
  if (cols.empty()) throw NoSplitting("Hom(U, V (x) V* (x) U) is zero for U = '" + u->label() + "'");
  LinearSolution sol = solve_linear(hstack(cols), target);
  if (!sol.consistent())
    throw NoSplitting("'" + u->label() + "' is not a retract of '" + v->label() + "' (x) W along W = V* (x) U");

  auto combine = [&](const Matrix& c) {
    Matrix a(f, vw->dim(), n);
    for (std::size_t k = 0; k < hom.dim(); ++k)
      if (!c.at(k, 0).is_zero()) a += hom.basis[k].matrix() * c.at(k, 0);
    return a;
  };
  Matrix c = *sol.particular;
  Splitting out{w, vw, Morphism::unchecked(u, vw, combine(c)), beta, std::nullopt};
  if (sol.kernel.cols() > 0) out.alternative_alpha = Morphism::unchecked(u, vw, combine(c + sol.kernel.col(0)));
  if (!(beta.matrix() * out.alpha.matrix()).is_identity()) throw InternalError("beta alpha != Id after solve");
  return out;
}

TraceFunctional::TraceFunctional(ModulePtr v) : v_(std::move(v)) {
  AmbiVerdict verdict = ambi_direct(v_);
  if (!*verdict.direct) throw NotAmbi("'" + v_->label() + "' is not ambidextrous");
}

const Splitting& TraceFunctional::splitting(const ModulePtr& u) const {
  const std::uint64_t key = u->fingerprint();
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, std::make_shared<const Splitting>(split_through(v_, u))).first;
  return *it->second;
}

Scalar TraceFunctional::trace_via(const Splitting& s, const Matrix& f, const ModulePtr& u) const {
  return trace_via_alpha(s, s.alpha.matrix(), f, u);
}

Scalar TraceFunctional::trace_via_alpha(const Splitting& s, const Matrix& alpha, const Matrix& f,
                                        const ModulePtr& u) const {
  if (f.rows() != u->dim() || f.cols() != u->dim()) throw DimensionMismatch("trace of a non-endomorphism");
  Matrix g = alpha * f * s.beta.matrix();
  Matrix p = partial_trace_right(g, v_, s.w);
  const Scalar c = p.at(0, 0);
  if (p != Matrix::identity(p.field(), p.rows()) * c)
    throw NonScalarEndomorphism("partial trace is not a scalar on '" + v_->label() + "'");
  return c;
}

Scalar TraceFunctional::trace(const ModulePtr& u, const Matrix& f) const { return trace_via(splitting(u), f, u); }

Scalar TraceFunctional::trace(const Morphism& f) const {
  if (f.source() != f.target() && f.source()->fingerprint() != f.target()->fingerprint())
    throw DimensionMismatch("trace of a morphism between different modules");
  return trace(f.source(), f.matrix());
}

Scalar TraceFunctional::dimension(const ModulePtr& u) const {
  return trace(u, Matrix::identity(u->field(), u->dim()));
}

Scalar modified_trace(const TraceFunctional& t, const Morphism& f) { return t.trace(f); }

Scalar modified_dimension(const TraceFunctional& t, const ModulePtr& u) { return t.dimension(u); }

Scalar pivotal_trace(const Morphism& f) {
  const ModulePtr& u = f.source();
  Duality du = duality_morphisms(u);
  Matrix id = Matrix::identity(u->field(), u->dim());
  Matrix s = du.ev_tilde.matrix() * kron(f.matrix(), id) * du.coev.matrix();
  return s.at(0, 0);
}

// ---------------------------------------------------------------------------

std::size_t AxiomReport::count(AxiomSample::Kind k) const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.kind == k;
  return n;
}

std::size_t AxiomReport::failures() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += !s.residual.is_zero();
  return n;
}

AxiomReport verify_trace_axioms(const TraceFunctional& t, const std::vector<ModulePtr>& ideal,
                                const std::vector<ModulePtr>& objects, std::uint64_t seed, std::size_t samples) {
  AxiomReport report;
  if (ideal.empty()) return report;
  std::mt19937_64 rng(seed);

  std::map<std::pair<std::size_t, std::size_t>, std::pair<ModulePtr, HomSpace>> tensors;
  for (std::size_t n = 0; n < samples && !objects.empty(); ++n) {
    const std::size_t a = rng() % ideal.size(), b = rng() % objects.size();
    auto it = tensors.find({a, b});
    if (it == tensors.end()) {
      ModulePtr uw = tensor_modules(ideal[a], objects[b]);
      it = tensors.emplace(std::make_pair(a, b), std::make_pair(uw, hom_basis(uw, uw))).first;
    }
    const auto& [uw, end] = it->second;
    Matrix f = random_combination(end.basis, rng).matrix();
    Scalar lhs = t.trace(uw, f);
    Scalar rhs = t.trace(ideal[a], partial_trace_right(f, ideal[a], objects[b]));
    report.samples.push_back({AxiomSample::Kind::partial_trace,
                              "U=" + ideal[a]->label() + " W=" + objects[b]->label(), lhs - rhs});
  }

  std::map<std::pair<std::size_t, std::size_t>, std::pair<HomSpace, HomSpace>> homs;
  for (std::size_t n = 0; n < samples; ++n) {
    const std::size_t a = rng() % ideal.size(), b = rng() % ideal.size();
    auto it = homs.find({a, b});
    if (it == homs.end())
      it = homs.emplace(std::make_pair(a, b),
                        std::make_pair(hom_basis(ideal[a], ideal[b]), hom_basis(ideal[b], ideal[a])))
               .first;
    const auto& [fwd, back] = it->second;
    Matrix f = fwd.dim() ? random_combination(fwd.basis, rng).matrix()
                         : Matrix(ideal[a]->field(), ideal[b]->dim(), ideal[a]->dim());
    Matrix g = back.dim() ? random_combination(back.basis, rng).matrix()
                          : Matrix(ideal[a]->field(), ideal[a]->dim(), ideal[b]->dim());
    Scalar lhs = t.trace(ideal[a], g * f);
    Scalar rhs = t.trace(ideal[b], f * g);
    report.samples.push_back(
        {AxiomSample::Kind::cyclicity, "U=" + ideal[a]->label() + " U'=" + ideal[b]->label(), lhs - rhs});
  }
  return report;
}

}  // namespace modtrace
