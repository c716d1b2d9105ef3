#ifndef MODTRACE_CATEGORY_HPP
#define MODTRACE_CATEGORY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "modtrace/module.hpp"

namespace modtrace {

/// Basis pair (a, b) of V (x) W sits at index a * dim W + b.
ModulePtr tensor_modules(const ModulePtr& v, const ModulePtr& w);
/// b acts on V* by the transpose of rho(S(b)).
ModulePtr dual_module(const ModulePtr& v);
Morphism tensor_morphisms(const Morphism& f, const Morphism& g);

/// The left duality (V*, ev, coev) and right duality (V* again, ev~, coev~).
struct Duality {
  ModulePtr module;
  ModulePtr dual;
  Morphism coev;        // 1 -> V (x) V*
  Morphism ev;          // V* (x) V -> 1
  Morphism coev_tilde;  // 1 -> V* (x) V
  Morphism ev_tilde;    // V (x) V* -> 1
};

/// Builds the four maps and checks the four zig-zag identities; a failure throws
/// InternalError (it means the pivot does not implement S^2).
Duality duality_morphisms(const ModulePtr& v);

/// Concrete pivotal map V -> V**: the pivot action under the canonical
/// identification of V** with V.
Morphism pivotal_phi(const ModulePtr& v);
/// The same map assembled as (ev~_V (x) Id_{V**})(Id_V (x) coev_{V*}).
Matrix pivotal_phi_composite(const ModulePtr& v);

/// W* -> V* for f: V -> W, as the transposed matrix.
Morphism dual_morphism(const Morphism& f);
/// (ev_W (x) Id_{V*})(Id_{W*} (x) f (x) Id_{V*})(Id_{W*} (x) coev_V).
Matrix dual_morphism_composite(const Morphism& f);

/// W* (x) V* -> (V (x) W)*, the leg swap.
Morphism gamma(const ModulePtr& v, const ModulePtr& w);
/// Left-duality composite for gamma.
Matrix gamma_composite(const ModulePtr& v, const ModulePtr& w);
/// Right-duality composite for the same map.
Matrix gamma_prime_composite(const ModulePtr& v, const ModulePtr& w);

struct HomSpace {
  ModulePtr source;
  ModulePtr target;
  std::vector<Morphism> basis;

  std::size_t dim() const noexcept { return basis.size(); }
};

/// Canonical (row-reduced) basis of Hom(v, w).
HomSpace hom_basis(const ModulePtr& v, const ModulePtr& w);

/// (Id_V (x) ev~_W)(f (x) Id_{W*})(Id_V (x) coev_W) for f in End(V (x) W).
Matrix partial_trace_right(const Matrix& f, const ModulePtr& v, const ModulePtr& w);

/// s with a = s * b, or nullopt when a is not a multiple of b. b must be nonzero;
/// s is read off at the first nonzero entry of b.
std::optional<Scalar> proportionality(const Matrix& a, const Matrix& b);

/// Seeded random linear combination of morphisms (coefficients from random_scalar).
Morphism random_combination(const std::vector<Morphism>& basis, std::mt19937_64& rng);

struct IsoResult {
  enum class Verdict { isomorphic, not_isomorphic, not_found };
  Verdict verdict;
  std::optional<Morphism> iso;
};

/// Searches Hom(v, w) for an invertible map: basis elements first, then 64 seeded
/// random combinations. A miss is definite when dimensions differ, Hom is zero,
/// or (both_local) every composite of Hom(w, v) and Hom(v, w) basis elements is nilpotent.
IsoResult iso_test(const ModulePtr& v, const ModulePtr& w, std::uint64_t seed = 0, bool both_local = false);

}  // namespace modtrace

#endif  // MODTRACE_CATEGORY_HPP
