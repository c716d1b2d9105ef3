#include "modtrace/category.hpp"

#include "kernels.hpp"
#include "modtrace/errors.hpp"
#include "modtrace/linalg.hpp"

namespace modtrace {

namespace {

void check_same_algebra(const ModuleRep& v, const ModuleRep& w) {
  if (v.algebra() != w.algebra() && v.algebra()->fingerprint() != w.algebra()->fingerprint())
    throw MalformedInput("modules '" + v.label() + "' and '" + w.label() + "' live over different algebras");
}

Matrix coev_matrix(const FieldSpec& f, std::size_t d) {
  Matrix m(f, d * d, 1);
  for (std::size_t i = 0; i < d; ++i) m.set(i * d + i, 0, f.one());
  return m;
}

Matrix ev_matrix(const FieldSpec& f, std::size_t d) { return coev_matrix(f, d).transpose(); }

Matrix ev_tilde_matrix(const ModuleRep& v) {
  const std::size_t d = v.dim();
  const Matrix& g = v.pivot_action();
  Matrix m(v.field(), 1, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) m.set(0, a * d + b, g.at(b, a));
  return m;
}

Matrix coev_tilde_matrix(const ModuleRep& v) {
  const std::size_t d = v.dim();
  const Matrix& gi = v.pivot_inverse_action();
  Matrix m(v.field(), d * d, 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a) m.set(i * d + a, 0, gi.at(a, i));
  return m;
}

Matrix swap_matrix(const FieldSpec& f, std::size_t dv, std::size_t dw) {
  // w_b* (x) v_a* at b * dv + a  ->  (v_a (x) w_b)* at a * dw + b
  Matrix m(f, dv * dw, dv * dw);
  for (std::size_t a = 0; a < dv; ++a)
    for (std::size_t b = 0; b < dw; ++b) m.set(a * dw + b, b * dv + a, f.one());
  return m;
}

}  // namespace

ModulePtr tensor_modules(const ModulePtr& v, const ModulePtr& w) {
  check_same_algebra(*v, *w);
  const HopfPresentation& h = *v->algebra();
  const auto& av = v->actions();
  const auto& aw = w->actions();
  std::vector<Matrix> gens;
  for (std::size_t g : h.generators()) {
    Matrix m(v->field(), v->dim() * w->dim(), v->dim() * w->dim());
    for (const auto& t : h.coproduct(g)) {
      Matrix k = kron(av[t.left], aw[t.right]);
      m += t.coeff.is_one() ? k : k * t.coeff;
    }
    gens.push_back(std::move(m));
  }
  return ModuleRep::from_generator_actions(v->algebra(), "(" + v->label() + " x " + w->label() + ")", std::move(gens),
                                           false);
}

ModulePtr dual_module(const ModulePtr& v) {
  const HopfPresentation& h = *v->algebra();
  std::vector<Matrix> gens;
  for (std::size_t g : h.generators()) {
    Vec s(h.dim(), h.field().zero());
    for (std::size_t r = 0; r < h.dim(); ++r) s[r] = h.antipode().at(r, g);
    gens.push_back(v->act(s).transpose());
  }
  return ModuleRep::from_generator_actions(v->algebra(), v->label() + "*", std::move(gens), false);
}

Morphism tensor_morphisms(const Morphism& f, const Morphism& g) {
  return Morphism::unchecked(tensor_modules(f.source(), g.source()), tensor_modules(f.target(), g.target()),
                             kron(f.matrix(), g.matrix()));
}

Duality duality_morphisms(const ModulePtr& v) {
  const FieldSpec& f = v->field();
  const std::size_t d = v->dim();
  ModulePtr unit = trivial_module(v->algebra());
  ModulePtr dual = dual_module(v);
  ModulePtr v_vd = tensor_modules(v, dual);
  ModulePtr vd_v = tensor_modules(dual, v);
  Duality out{v,
              dual,
              Morphism::unchecked(unit, v_vd, coev_matrix(f, d)),
              Morphism::unchecked(vd_v, unit, ev_matrix(f, d)),
              Morphism::unchecked(unit, vd_v, coev_tilde_matrix(*v)),
              Morphism::unchecked(v_vd, unit, ev_tilde_matrix(*v))};

  const Matrix id = Matrix::identity(f, d);
  const Matrix& coev = out.coev.matrix();
  const Matrix& ev = out.ev.matrix();
  const Matrix& coevt = out.coev_tilde.matrix();
  const Matrix& evt = out.ev_tilde.matrix();
  // (Id_V (x) ev)(coev (x) Id_V) and (ev (x) Id_V*)(Id_V* (x) coev)
  if (!apply_tensor({id, ev}, apply_tensor({coev, id}, id)).is_identity() ||
      !apply_tensor({ev, id}, apply_tensor({id, coev}, id)).is_identity())
    throw InternalError("left duality zig-zag fails for '" + v->label() + "'");
  // (ev~ (x) Id_V)(Id_V (x) coev~) and (Id_V* (x) ev~)(coev~ (x) Id_V*)
  if (!apply_tensor({evt, id}, apply_tensor({id, coevt}, id)).is_identity() ||
      !apply_tensor({id, evt}, apply_tensor({coevt, id}, id)).is_identity())
    throw InternalError("right duality zig-zag fails for '" + v->label() + "'");
  if (!out.coev.intertwines() || !out.ev.intertwines() || !out.coev_tilde.intertwines() ||
      !out.ev_tilde.intertwines())
    throw InternalError("duality maps for '" + v->label() + "' are not module maps (pivot does not implement S^2?)");
  return out;
}

Morphism pivotal_phi(const ModulePtr& v) {
  return Morphism::unchecked(v, dual_module(dual_module(v)), v->pivot_action());
}

Matrix pivotal_phi_composite(const ModulePtr& v) {
  const FieldSpec& f = v->field();
  const std::size_t d = v->dim();
  const Matrix id = Matrix::identity(f, d);
  // V -> V (x) V* (x) V** -> V**
  Matrix x = apply_tensor({id, coev_matrix(f, d)}, id);
  return apply_tensor({ev_tilde_matrix(*v), id}, x);
}

Morphism dual_morphism(const Morphism& f) {
  return Morphism::unchecked(dual_module(f.target()), dual_module(f.source()), f.matrix().transpose());
}

Matrix dual_morphism_composite(const Morphism& f) {
  const FieldSpec& fld = f.matrix().field();
  const std::size_t dv = f.source()->dim(), dw = f.target()->dim();
  const Matrix iw = Matrix::identity(fld, dw), iv = Matrix::identity(fld, dv);
  // W* -> W* (x) V (x) V* -> W* (x) W (x) V* -> V*
  Matrix x = apply_tensor({iw, coev_matrix(fld, dv)}, iw);
  x = apply_tensor({iw, f.matrix(), iv}, x);
  return apply_tensor({ev_matrix(fld, dw), iv}, x);
}

Morphism gamma(const ModulePtr& v, const ModulePtr& w) {
  return Morphism::unchecked(tensor_modules(dual_module(w), dual_module(v)), dual_module(tensor_modules(v, w)),
                             swap_matrix(v->field(), v->dim(), w->dim()));
}

Matrix gamma_composite(const ModulePtr& v, const ModulePtr& w) {
  const FieldSpec& f = v->field();
  const std::size_t dv = v->dim(), dw = w->dim(), n = dv * dw;
  const Matrix iv = Matrix::identity(f, dv), iw = Matrix::identity(f, dw), in = Matrix::identity(f, n);
  // W* (x) V* -> W* (x) V* (x) V (x) W (x) (V (x) W)* -> W* (x) W (x) (V (x) W)* -> (V (x) W)*
  Matrix x = apply_tensor({iw, iv, coev_matrix(f, n)}, Matrix::identity(f, n));
  x = apply_tensor({iw, ev_matrix(f, dv), iw, in}, x);
  return apply_tensor({ev_matrix(f, dw), in}, x);
}

Matrix gamma_prime_composite(const ModulePtr& v, const ModulePtr& w) {
  const FieldSpec& f = v->field();
  const std::size_t dv = v->dim(), dw = w->dim(), n = dv * dw;
  const Matrix iv = Matrix::identity(f, dv), in = Matrix::identity(f, n);
  ModulePtr vw = tensor_modules(v, w);
  // W* (x) V* -> (V W)* (x) V (x) W (x) W* (x) V* -> (V W)* (x) V (x) V* -> (V W)*
  Matrix x = apply_tensor({coev_tilde_matrix(*vw), Matrix::identity(f, dw), iv}, Matrix::identity(f, n));
  x = apply_tensor({in, iv, ev_tilde_matrix(*w), iv}, x);
  return apply_tensor({in, ev_tilde_matrix(*v)}, x);
}

HomSpace hom_basis(const ModulePtr& v, const ModulePtr& w) {
  check_same_algebra(*v, *w);
  HomSpace out{v, w, {}};
  const std::size_t du = v->dim(), dx = w->dim();
  detail::dispatch(v->field(), [&](const auto& ops) {
    using Ops = std::decay_t<decltype(ops)>;
    using T = typename Ops::T;
    std::vector<const std::vector<T>*> src, tgt;
    for (const auto& m : v->generator_actions()) src.push_back(&detail::storage<Ops>(m));
    for (const auto& m : w->generator_actions()) tgt.push_back(&detail::storage<Ops>(m));
    for (auto& x : detail::solve_intertwiners(ops, src, tgt, du, dx)) {
      Matrix m(v->field(), dx, du);
      detail::storage<Ops>(m) = std::move(x);
      out.basis.push_back(Morphism::unchecked(v, w, std::move(m)));
    }
  });
  return out;
}

Matrix partial_trace_right(const Matrix& f, const ModulePtr& v, const ModulePtr& w) {
  const std::size_t dv = v->dim(), dw = w->dim();
  if (f.rows() != dv * dw || f.cols() != dv * dw) throw DimensionMismatch("partial trace: shape mismatch");
  const Matrix& g = w->pivot_action();
  Matrix out(f.field(), dv, dv);
  for (std::size_t a = 0; a < dv; ++a)
    for (std::size_t a2 = 0; a2 < dv; ++a2) {
      Scalar s = f.field().zero();
      for (std::size_t b = 0; b < dw; ++b)
        for (std::size_t c = 0; c < dw; ++c) {
          const Scalar x = f.at(a * dw + b, a2 * dw + c);
          if (!x.is_zero()) s += x * g.at(c, b);
        }
      out.set(a, a2, s);
    }
  return out;
}

std::optional<Scalar> proportionality(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("proportionality: shape mismatch");
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      const Scalar x = b.at(r, c);
      if (x.is_zero()) continue;
      const Scalar s = a.at(r, c) / x;
      if (a != b * s) return std::nullopt;
      return s;
    }
  throw DivisionByZero("proportionality against the zero matrix");
}

Morphism random_combination(const std::vector<Morphism>& basis, std::mt19937_64& rng) {
  if (basis.empty()) throw MalformedInput("random combination of an empty basis");
  Matrix m(basis[0].matrix().field(), basis[0].matrix().rows(), basis[0].matrix().cols());
  for (const auto& b : basis) m += b.matrix() * random_scalar(m.field(), rng);
  return Morphism::unchecked(basis[0].source(), basis[0].target(), std::move(m));
}

IsoResult iso_test(const ModulePtr& v, const ModulePtr& w, std::uint64_t seed, bool both_local) {
  using V = IsoResult::Verdict;
  if (v->dim() != w->dim()) return {V::not_isomorphic, std::nullopt};
  HomSpace hom = hom_basis(v, w);
  if (hom.dim() == 0) return {v->dim() == 0 ? V::isomorphic : V::not_isomorphic, std::nullopt};
  for (const auto& f : hom.basis)
    if (invert(f.matrix())) return {V::isomorphic, f};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 64; ++trial) {
    Morphism f = random_combination(hom.basis, rng);
    if (invert(f.matrix())) return {V::isomorphic, f};
  }
  if (both_local) {
    HomSpace back = hom_basis(w, v);
    bool all_nilpotent = true;
    for (const auto& g : back.basis) {
      for (const auto& f : hom.basis)
        if (!is_nilpotent(g.matrix() * f.matrix())) {
          all_nilpotent = false;
          break;
        }
      if (!all_nilpotent) break;
    }
    if (all_nilpotent) return {V::not_isomorphic, std::nullopt};
  }
  return {V::not_found, std::nullopt};
}

}  // namespace modtrace
