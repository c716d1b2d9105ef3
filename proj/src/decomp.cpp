#include "modtrace/decomp.hpp"

#include <random>

#include "modtrace/errors.hpp"
#include "modtrace/linalg.hpp"
#include "modtrace/polynomial.hpp"

namespace modtrace {

namespace {

constexpr int kRandomSplits = 32;

std::uint64_t branch_seed(std::uint64_t seed, std::uint64_t branch) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (branch + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void require_prime(const FieldSpec& f, const char* what) {
  if (!f.is_prime()) throw Unsupported(std::string(what) + " is only supported over prime fields");
}

// Trace of the p^i-th power of an integer lift of a, reduced mod p^{i+1}, divided by p^i.
std::uint32_t lifted_trace_power(const Matrix& a, std::uint32_t p, unsigned i) {
  const std::size_t n = a.rows();
  std::uint64_t mod = 1;
  for (unsigned k = 0; k <= i; ++k) mod *= p;
  std::vector<std::uint64_t> x(a.residues().begin(), a.residues().end());
  auto mul = [&](const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> r(n * n, 0);
    for (std::size_t r0 = 0; r0 < n; ++r0)
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t c = u[r0 * n + k];
        if (c == 0) continue;
        for (std::size_t c0 = 0; c0 < n; ++c0) r[r0 * n + c0] = (r[r0 * n + c0] + c * v[k * n + c0]) % mod;
      }
    return r;
  };
  for (unsigned k = 0; k < i; ++k) {
    // x <- x^p
    std::vector<std::uint64_t> acc = x;
    for (std::uint32_t e = 1; e < p; ++e) acc = mul(acc, x);
    x = std::move(acc);
  }
  std::uint64_t tr = 0;
  for (std::size_t d = 0; d < n; ++d) tr = (tr + x[d * n + d]) % mod;
  const std::uint64_t pi = mod / p;
  if (tr % pi != 0) throw InternalError("radical computation: trace not divisible by p^i");
  return static_cast<std::uint32_t>((tr / pi) % p);
}

Polynomial power(const Polynomial& q, unsigned e) {
  Polynomial r = Polynomial::constant(q.field().one());
  for (unsigned k = 0; k < e; ++k) r = r * q;
  return r;
}

struct Piece {
  ModulePtr module;
  Matrix inclusion;   // dM x dW
  Matrix projection;  // dW x dM
  std::uint64_t seed;
};

// Restriction of piece.module to the image of an idempotent e in End(W).
Piece restrict(const Piece& piece, const Matrix& e, std::uint64_t seed, const std::string& label) {
  std::vector<std::size_t> piv;
  Matrix r = rref(e.transpose(), &piv);
  Matrix incl = r.block(0, 0, piv.size(), e.rows()).transpose();
  Matrix proj = e.select_rows(piv);
  std::vector<Matrix> gens;
  for (const auto& g : piece.module->generator_actions()) gens.push_back(proj * g * incl);
  ModulePtr sub = ModuleRep::from_generator_actions(piece.module->algebra(), label, std::move(gens), false);
  return {sub, piece.inclusion * incl, proj * piece.projection, seed};
}

SummandStatus classify_leaf(const EndAlgebra& end, std::mt19937_64& rng) {
  if (end.dim() == 1) return SummandStatus::certified;
  const std::size_t quotient = end.dim() - radical_basis(end).size();
  if (quotient == 1) return SummandStatus::certified;
  // End/Rad is a field extension of degree `quotient` when some element generates it.
  for (int trial = 0; trial < kRandomSplits + static_cast<int>(end.dim()); ++trial) {
    Matrix a = trial < static_cast<int>(end.dim()) ? end.basis()[trial].matrix()
                                                   : random_combination(end.basis(), rng).matrix();
    auto factors = factor_over_prime_field(characteristic_polynomial(a));
    if (factors.size() == 1 && static_cast<std::size_t>(factors[0].factor.degree()) == quotient)
      return SummandStatus::not_absolutely_indecomposable;
  }
  return SummandStatus::probabilistic;
}

void split(const Piece& piece, std::vector<Summand>& out, const ModulePtr& whole) {
  EndAlgebra end(piece.module);
  std::mt19937_64 rng(piece.seed);
  const std::size_t tries = end.dim() == 1 ? 0 : end.dim() + kRandomSplits;
  for (std::size_t t = 0; t < tries; ++t) {
    Matrix phi = t < end.dim() ? end.basis()[t].matrix() : random_combination(end.basis(), rng).matrix();
    Polynomial c = characteristic_polynomial(phi);
    auto factors = factor_over_prime_field(c, piece.seed);
    if (factors.size() < 2) continue;
    // Idempotent onto the generalized kernel of the first primary component:
    // e = t B (phi) with s A + t B = 1, A = q^m, B = c / A.
    Polynomial a = power(factors[0].factor, factors[0].multiplicity);
    Polynomial b = c / a;
    ExtendedGcd eg = extended_gcd(a, b);
    if (!eg.g.is_one()) throw InternalError("primary components are not coprime");
    Polynomial ep = (eg.t * b) % c;
    Matrix e = ep.evaluate(phi);
    Matrix id = Matrix::identity(e.field(), e.rows());
    const std::string& base = piece.module->label();
    Piece first = restrict(piece, e, branch_seed(piece.seed, 0), base + ".0");
    Piece second = restrict(piece, id - e, branch_seed(piece.seed, 1), base + ".1");
    split(first, out, whole);
    split(second, out, whole);
    return;
  }
  SummandStatus status = classify_leaf(end, rng);
  Morphism incl = Morphism::unchecked(piece.module, whole, piece.inclusion);
  Morphism proj = Morphism::unchecked(whole, piece.module, piece.projection);
  out.push_back({piece.module, incl, proj, piece.inclusion * piece.projection, status});
}

}  // namespace

// ---------------------------------------------------------------------------

EndAlgebra::EndAlgebra(ModulePtr m) : module_(std::move(m)) {
  basis_ = hom_basis(module_, module_).basis;
  const std::size_t d = module_->dim();
  for (const auto& b : basis_) {
    const Matrix& x = b.matrix();
    std::size_t pos = d * d;
    for (std::size_t k = 0; k < d * d && pos == d * d; ++k)
      if (!x.at(k / d, k % d).is_zero()) pos = k;
    pivots_.push_back(pos);
  }
  table_.reserve(dim() * dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) table_.push_back(coordinates(basis_[i].matrix() * basis_[j].matrix()));
}

Vec EndAlgebra::coordinates(const Matrix& f) const {
  const std::size_t d = module_->dim();
  Vec c;
  c.reserve(dim());
  for (std::size_t p : pivots_) c.push_back(f.at(p / d, p % d));
  if (element(c) != f) throw InternalError("matrix is not an endomorphism of '" + module_->label() + "'");
  return c;
}

Matrix EndAlgebra::element(const Vec& coords) const {
  Matrix m(module_->field(), module_->dim(), module_->dim());
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero()) m += basis_[k].matrix() * coords[k];
  return m;
}

std::vector<Matrix> radical_basis(const EndAlgebra& end) {
  const FieldSpec& f = end.module()->field();
  require_prime(f, "radical computation");
  const std::uint32_t p = f.p();
  const std::size_t n = end.module()->dim();
  const std::size_t k = end.dim();
  std::vector<Matrix> b;
  for (const auto& m : end.basis()) b.push_back(m.matrix());
  if (k == 0) return {};

  // I_0: kernel of the trace form.
  Matrix form(f, k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) form.set(j, i, (b[i] * b[j]).trace());
  Matrix ker = nullspace(form);
  std::vector<Matrix> ideal;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Matrix x(f, n, n);
    for (std::size_t i = 0; i < k; ++i)
      if (!ker.at(i, c).is_zero()) x += b[i] * ker.at(i, c);
    ideal.push_back(std::move(x));
  }
  std::size_t pi = p;
  for (unsigned i = 1; pi <= n && !ideal.empty(); ++i, pi *= p) {
    Matrix g(f, k, ideal.size());
    for (std::size_t m = 0; m < ideal.size(); ++m)
      for (std::size_t j = 0; j < k; ++j) g.set(j, m, f.from_int(lifted_trace_power(ideal[m] * b[j], p, i)));
    Matrix kk = nullspace(g);
    std::vector<Matrix> next;
    for (std::size_t c = 0; c < kk.cols(); ++c) {
      Matrix x(f, n, n);
      for (std::size_t m = 0; m < ideal.size(); ++m)
        if (!kk.at(m, c).is_zero()) x += ideal[m] * kk.at(m, c);
      next.push_back(std::move(x));
    }
    ideal = std::move(next);
  }
  return ideal;
}

std::string to_string(SummandStatus s) {
  switch (s) {
    case SummandStatus::certified:
      return "indecomposable-certified";
    case SummandStatus::probabilistic:
      return "indecomposable-probabilistic";
    case SummandStatus::not_absolutely_indecomposable:
      return "not-absolutely-indecomposable";
  }
  return "unknown";
}

bool DecompositionResult::fully_certified() const {
  for (const auto& s : summands)
    if (s.status != SummandStatus::certified) return false;
  return true;
}

std::vector<std::size_t> DecompositionResult::dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : summands) out.push_back(s.module->dim());
  return out;
}

DecompositionResult decompose(const ModulePtr& m, std::uint64_t seed) {
  require_prime(m->field(), "decomposition");
  DecompositionResult result{m, {}};
  if (m->dim() == 0) return result;
  const Matrix id = Matrix::identity(m->field(), m->dim());
  Piece root{m, id, id, seed};
  split(root, result.summands, m);
  return result;
}

std::optional<std::string> check_decomposition(const DecompositionResult& d) {
  const FieldSpec& f = d.module->field();
  const std::size_t n = d.module->dim();
  Matrix sum(f, n, n);
  std::size_t total = 0;
  for (std::size_t k = 0; k < d.summands.size(); ++k) {
    const Summand& s = d.summands[k];
    total += s.module->dim();
    sum += s.idempotent;
    if (!(s.projection.matrix() * s.inclusion.matrix()).is_identity()) return "p_k i_k != Id for summand " + std::to_string(k);
    if (s.inclusion.matrix() * s.projection.matrix() != s.idempotent) return "e_k != i_k p_k for summand " + std::to_string(k);
    if (!s.inclusion.intertwines() || !s.projection.intertwines()) return "summand " + std::to_string(k) + " maps are not module maps";
    for (std::size_t l = 0; l < d.summands.size(); ++l) {
      Matrix prod = s.idempotent * d.summands[l].idempotent;
      if (k == l ? prod != s.idempotent : !prod.is_zero())
        return "idempotents " + std::to_string(k) + ", " + std::to_string(l) + " are not orthogonal";
    }
  }
  if (total != n) return std::string("summand dimensions do not add up");
  if (!sum.is_identity()) return std::string("idempotents do not sum to the identity");
  return std::nullopt;
}

void require_absolutely_simple(const ModulePtr& v) {
  const std::size_t e = hom_basis(v, v).dim();
  if (e != 1)
    throw NotAbsolutelySimple("module '" + v->label() + "' has " + std::to_string(e) + "-dimensional End");
}

std::size_t locate_j(const Duality& v, const DecompositionResult& d) {
  const Matrix& coev = v.coev.matrix();
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < d.summands.size(); ++k)
    if (!(d.summands[k].projection.matrix() * coev).is_zero()) hits.push_back(k);
  if (hits.size() != 1)
    throw InternalError(std::to_string(hits.size()) + " summands receive coev (expected exactly one)");
  const Summand& s = d.summands[hits[0]];
  if (s.idempotent * coev != coev) throw InternalError("e_j coev != coev");
  HomSpace h = hom_basis(trivial_module(v.module->algebra()), s.module);
  if (h.dim() != 1) throw InternalError("Hom(1, W_j) is not one-dimensional");
  if (!proportionality(s.projection.matrix() * coev, h.basis[0].matrix()))
    throw InternalError("Hom(1, W_j) is not spanned by p_j coev");
  return hits[0];
}

std::size_t locate_jprime(const Duality& v, const DecompositionResult& d) {
  const Matrix& evt = v.ev_tilde.matrix();
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < d.summands.size(); ++k)
    if (!(evt * d.summands[k].inclusion.matrix()).is_zero()) hits.push_back(k);
  if (hits.size() != 1)
    throw InternalError(std::to_string(hits.size()) + " summands map onto 1 under ev~ (expected exactly one)");
  const Summand& s = d.summands[hits[0]];
  if (evt * s.idempotent != evt) throw InternalError("ev~ e_j' != ev~");
  HomSpace h = hom_basis(s.module, trivial_module(v.module->algebra()));
  if (h.dim() != 1) throw InternalError("Hom(W_j', 1) is not one-dimensional");
  if (!proportionality(evt * s.inclusion.matrix(), h.basis[0].matrix()))
    throw InternalError("Hom(W_j', 1) is not spanned by ev~ i_j'");
  return hits[0];
}

ProjectiveCover projective_cover_unit(const HopfPtr& h, std::uint64_t seed) {
  ModulePtr reg = regular_module(h);
  ModulePtr one = trivial_module(h);
  DecompositionResult d = decompose(reg, seed);
  std::optional<std::size_t> found;
  for (std::size_t k = 0; k < d.summands.size(); ++k) {
    if (hom_basis(d.summands[k].module, one).dim() == 0) continue;
    if (found) {
      // Further candidates must be isomorphic to the first.
      if (iso_test(d.summands[*found].module, d.summands[k].module, seed).verdict != IsoResult::Verdict::isomorphic)
        throw InternalError("two non-isomorphic summands of the regular module map onto 1");
      continue;
    }
    found = k;
  }
  if (!found) throw InternalError("no summand of the regular module maps onto 1");
  Summand s = d.summands[*found];
  const bool socle = hom_basis(one, s.module).dim() >= 1;
  return {s, socle, std::move(d)};
}

}  // namespace modtrace
