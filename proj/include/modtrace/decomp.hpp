#ifndef MODTRACE_DECOMP_HPP
#define MODTRACE_DECOMP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modtrace/category.hpp"

namespace modtrace {

/// End(M) with a basis of morphisms and composition structure constants.
class EndAlgebra {
 public:
  explicit EndAlgebra(ModulePtr m);

  const ModulePtr& module() const noexcept { return module_; }
  const std::vector<Morphism>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  /// Coordinates of basis[i] o basis[j].
  const Vec& product(std::size_t i, std::size_t j) const { return table_.at(i * dim() + j); }
  /// Coordinates of an endomorphism matrix; throws InternalError when it is not in End(M).
  Vec coordinates(const Matrix& f) const;
  Matrix element(const Vec& coords) const;

 private:
  ModulePtr module_;
  std::vector<Morphism> basis_;
  std::vector<std::size_t> pivots_;  // flattened position read off for each coordinate
  std::vector<Vec> table_;
};

/// Basis (as matrices on the module) of the Jacobson radical of End(M), by the
/// iterated trace-form method for characteristic p. Prime fields only.
std::vector<Matrix> radical_basis(const EndAlgebra& end);

enum class SummandStatus { certified, probabilistic, not_absolutely_indecomposable };
std::string to_string(SummandStatus s);

struct Summand {
  ModulePtr module;
  Morphism inclusion;   // W_k -> M
  Morphism projection;  // M -> W_k
  Matrix idempotent;    // inclusion o projection
  SummandStatus status;
};

struct DecompositionResult {
  ModulePtr module;
  std::vector<Summand> summands;

  bool fully_certified() const;
  std::vector<std::size_t> dims() const;
};

/// Krull-Schmidt decomposition by repeated Fitting splitting with idempotents
/// that are polynomials in endomorphisms. Prime fields only.
DecompositionResult decompose(const ModulePtr& m, std::uint64_t seed = 0);

/// Checks sum e_k = Id, e_k e_l = delta_kl e_k, p_k i_k = Id and that the
/// maps are module maps; returns a description of the first failure.
std::optional<std::string> check_decomposition(const DecompositionResult& d);

/// The unique summand of V (x) V* with p_k coev_V != 0. Also checks
/// e_j coev = coev and that Hom(1, W_j) is spanned by p_j coev.
std::size_t locate_j(const Duality& v, const DecompositionResult& d);
/// The unique summand with ev~_V i_k != 0, with the mirrored checks.
std::size_t locate_jprime(const Duality& v, const DecompositionResult& d);

struct ProjectiveCover {
  Summand summand;  // a summand of the regular module
  bool socle_is_trivial;
  DecompositionResult regular;
};

/// Decomposes the regular module and picks the summand mapping onto the unit;
/// socle_is_trivial is dim Hom(1, P_1) >= 1.
ProjectiveCover projective_cover_unit(const HopfPtr& h, std::uint64_t seed = 0);

/// Throws NotAbsolutelySimple unless End(V) is one-dimensional.
void require_absolutely_simple(const ModulePtr& v);

}  // namespace modtrace

#endif  // MODTRACE_DECOMP_HPP
