#ifndef MODTRACE_HOPF_HPP
#define MODTRACE_HOPF_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modtrace/field.hpp"
#include "modtrace/matrix.hpp"

namespace modtrace {

/// One structure constant. For multiplication b_i b_j gains coeff * b_k; for
/// comultiplication Delta(b_i) gains coeff * b_j (x) b_k.
struct StructureTerm {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Scalar coeff;
};

/// Raw description of a Hopf algebra, as read from a file or produced by a builder.
struct HopfData {
  explicit HopfData(FieldSpec f) : field(f), antipode(f, 0, 0) {}

  std::string name;
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<StructureTerm> mult;
  std::vector<StructureTerm> comult;
  Vec unit;
  Vec counit;
  Matrix antipode;  // column i holds S(b_i)
  Vec pivot;
  std::vector<std::size_t> generators;
};

/// Words in the generators whose values form a basis of the algebra:
/// word t equals b_{generators[slot]} times word parent, word 0 is the unit.
struct GeneratorSpan {
  struct Word {
    std::size_t parent;  // npos for the unit word
    std::size_t slot;    // position in the generator list
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<Word> words;
  /// Sparse change of basis: b_k = sum over (t, c) in to_basis[k] of c * word_t.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> to_basis;
};

class HopfPresentation;
using HopfPtr = std::shared_ptr<const HopfPresentation>;

/// A finite-dimensional Hopf algebra with a chosen pivot and generator subset.
/// Construction checks only shape (indices, lengths, fields); axioms are
/// checked by validate_hopf and validate_pivot.
class HopfPresentation {
 public:
  using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;
  struct TensorTerm {
    std::size_t left;
    std::size_t right;
    Scalar coeff;
  };

  static HopfPtr create(HopfData data);

  const std::string& name() const noexcept { return data_.name; }
  const FieldSpec& field() const noexcept { return data_.field; }
  std::size_t dim() const noexcept { return data_.dim; }
  const std::vector<std::string>& basis_labels() const noexcept { return data_.basis_labels; }
  const std::vector<StructureTerm>& mult_terms() const noexcept { return data_.mult; }
  const std::vector<StructureTerm>& comult_terms() const noexcept { return data_.comult; }
  const Vec& unit() const noexcept { return data_.unit; }
  const Vec& counit() const noexcept { return data_.counit; }
  const Matrix& antipode() const noexcept { return data_.antipode; }
  const Vec& pivot() const noexcept { return data_.pivot; }
  const std::vector<std::size_t>& generators() const noexcept { return data_.generators; }
  const HopfData& data() const noexcept { return data_; }

  /// b_i b_j as a sparse coordinate vector.
  const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i * data_.dim + j]; }
  /// Delta(b_i) as a list of tensor terms.
  const std::vector<TensorTerm>& coproduct(std::size_t i) const { return coproducts_[i]; }

  Vec zero_vector() const;
  Vec basis_vector(std::size_t i) const;
  Vec multiply(const Vec& x, const Vec& y) const;
  Vec apply_antipode(const Vec& x) const;
  Scalar apply_counit(const Vec& x) const;
  /// Matrix of left multiplication by b_i: column j holds b_i b_j.
  Matrix left_multiplication(std::size_t i) const;
  /// Matrix of right multiplication by b_i: column j holds b_j b_i.
  Matrix right_multiplication(std::size_t i) const;
  Matrix left_multiplication(const Vec& x) const;
  Matrix right_multiplication(const Vec& x) const;

  /// Inverse of the pivot; throws InvalidHopfData if the pivot is not invertible.
  const Vec& pivot_inverse() const;
  /// Spanning words over the generators; throws InvalidHopfData if they do not span.
  const GeneratorSpan& span() const;
  /// Stable 64-bit hash of the full presentation.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  explicit HopfPresentation(HopfData data);

  HopfData data_;
  std::vector<SparseVec> products_;
  std::vector<std::vector<TensorTerm>> coproducts_;
  std::uint64_t fingerprint_ = 0;

  mutable std::once_flag span_once_;
  mutable std::optional<GeneratorSpan> span_;
  mutable std::string span_error_;
  mutable std::once_flag pivot_once_;
  mutable std::optional<Vec> pivot_inverse_;
};

/// Outcome of one axiom check; witness holds basis indices when it failed.
struct AxiomResult {
  std::string name;
  bool passed = true;
  std::vector<std::size_t> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomResult> axioms;

  bool passed() const;
  const AxiomResult* first_failure() const;
  std::string summary() const;
};

/// Unit, associativity, counit and comultiplication compatibility,
/// coassociativity, counit laws, antipode, and generator spanning.
ValidationReport validate_hopf(const HopfPresentation& h);
/// Pivot is invertible, group-like, and implements S^2 by conjugation.
ValidationReport validate_pivot(const HopfPresentation& h);

enum class Side { left, right };

struct IntegralSpace {
  Side side;
  std::vector<Vec> basis;
};

/// Solves h L = eps(h) L (left) or L h = eps(h) L (right); throws InvalidHopfData
/// unless the solution space is one-dimensional.
IntegralSpace integral_space(const HopfPresentation& h, Side side);
bool is_unimodular(const HopfPresentation& h);

/// FNV-1a, used for fingerprints and report input hashes.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t state = 1469598103934665603ull);

}  // namespace modtrace

#endif  // MODTRACE_HOPF_HPP
