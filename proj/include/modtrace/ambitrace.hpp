#ifndef MODTRACE_AMBITRACE_HPP
#define MODTRACE_AMBITRACE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "modtrace/decomp.hpp"

namespace modtrace {

struct AmbiVerdict {
  ModulePtr module;
  std::optional<bool> direct;
  // Per End(V (x) V*) basis element: f coev = lambda coev and ev~ f = mu ev~.
  std::vector<Scalar> lambda;
  std::vector<Scalar> mu;
  /// First basis index with lambda != mu.
  std::optional<std::size_t> witness;
  /// Whether the unreduced equation (with dual morphism and gamma) agreed with
  /// lambda == mu on the audited elements.
  bool audit_consistent = true;

  std::optional<bool> structural;
  std::string structural_note;  // reason when structural is absent
  std::optional<std::size_t> j;
  std::optional<std::size_t> jprime;
  std::vector<std::size_t> summand_dims;
  /// iso_test(W_j*, W_j): true/false when definite.
  std::optional<bool> self_dual;
  std::optional<Morphism> self_dual_certificate;

  /// True when both verdicts exist and differ.
  bool disagreement() const { return structural && direct && *structural != *direct; }
};

/// Decides ambidexterity by comparing lambda and mu on a basis of End(V (x) V*).
/// Throws NotAbsolutelySimple unless End(V) is one-dimensional.
AmbiVerdict ambi_direct(const ModulePtr& v, std::uint64_t seed = 0);

/// Decomposes V (x) V* and compares the summands receiving coev and ev~; also
/// tests W_j* against W_j. Throws UncertifiedDecomposition, Unsupported off prime fields.
AmbiVerdict ambi_structural(const ModulePtr& v, std::uint64_t seed = 0);

enum class AmbiMethod { direct, structural, both };
/// Runs the requested procedures; with `both`, an unavailable structural verdict
/// is recorded in structural_note instead of thrown. Callers check disagreement().
AmbiVerdict decide_ambi(const ModulePtr& v, AmbiMethod method, std::uint64_t seed = 0);

/// U is a retract of V (x) W via alpha: U -> V (x) W and beta: V (x) W -> U.
struct Splitting {
  ModulePtr w;       // V* (x) U
  ModulePtr vw;      // V (x) W
  Morphism alpha;
  Morphism beta;     // ev~_V (x) Id_U
  /// A second solution alpha' != alpha, when the solution space is not a point.
  std::optional<Morphism> alternative_alpha;
};

/// Throws DegenerateEv when ev~_V = 0 and NoSplitting when U is not a retract along W = V* (x) U.
Splitting split_through(const ModulePtr& v, const ModulePtr& u);

/// The right trace on the ideal generated by an ambidextrous V, normalised by t_V(Id_V) = 1.
class TraceFunctional {
 public:
  /// Throws NotAbsolutelySimple or NotAmbi.
  explicit TraceFunctional(ModulePtr v);

  const ModulePtr& ambi_module() const noexcept { return v_; }

  /// Cached per module fingerprint; safe to call concurrently.
  const Splitting& splitting(const ModulePtr& u) const;

  Scalar trace(const Morphism& f) const;
  Scalar trace(const ModulePtr& u, const Matrix& f) const;
  /// The same trace through an explicit splitting of u.
  Scalar trace_via(const Splitting& s, const Matrix& f, const ModulePtr& u) const;
  /// As trace_via with alpha replaced by another section of beta.
  Scalar trace_via_alpha(const Splitting& s, const Matrix& alpha, const Matrix& f, const ModulePtr& u) const;
  Scalar dimension(const ModulePtr& u) const;

 private:
  ModulePtr v_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint64_t, std::shared_ptr<const Splitting>> cache_;
};

Scalar modified_trace(const TraceFunctional& t, const Morphism& f);
Scalar modified_dimension(const TraceFunctional& t, const ModulePtr& u);

/// The scalar ev~_U (f (x) Id) coev_U, assembled from the duality maps of U.
Scalar pivotal_trace(const Morphism& f);

struct AxiomSample {
  enum class Kind { partial_trace, cyclicity };
  Kind kind;
  std::string description;
  Scalar residual;
};

struct AxiomReport {
  std::vector<AxiomSample> samples;

  std::size_t count(AxiomSample::Kind k) const;
  std::size_t failures() const;
  bool all_zero() const { return failures() == 0; }
};

/// Checks t_{U (x) W}(f) = t_U(ptr_W f) for random f in End(U (x) W) and
/// t_U(g f) = t_{U'}(f g) for random f: U -> U', g: U' -> U, `samples` of each.
/// U and U' are drawn from `ideal`, W from `objects`.
AxiomReport verify_trace_axioms(const TraceFunctional& t, const std::vector<ModulePtr>& ideal,
                                const std::vector<ModulePtr>& objects, std::uint64_t seed, std::size_t samples);

}  // namespace modtrace

#endif  // MODTRACE_AMBITRACE_HPP
