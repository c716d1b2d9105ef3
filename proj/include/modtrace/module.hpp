#ifndef MODTRACE_MODULE_HPP
#define MODTRACE_MODULE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "modtrace/hopf.hpp"
#include "modtrace/matrix.hpp"

namespace modtrace {

class ModuleRep;
using ModulePtr = std::shared_ptr<const ModuleRep>;

/// A finite-dimensional left module over a HopfPresentation.
///
/// Generator actions are always stored; the full action list (one matrix per
/// basis element) is either supplied or derived on first use from the
/// generator words of the algebra.
class ModuleRep {
 public:
  /// Full action list, one d x d matrix per basis element.
  static ModulePtr from_actions(HopfPtr algebra, std::string label, std::vector<Matrix> actions,
                                bool validate = true);
  /// Actions of the generator subset only, in generator order.
  static ModulePtr from_generator_actions(HopfPtr algebra, std::string label, std::vector<Matrix> generator_actions,
                                          bool validate = true);

  const HopfPtr& algebra() const noexcept { return algebra_; }
  const FieldSpec& field() const noexcept { return algebra_->field(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::string& label() const noexcept { return label_; }

  const std::vector<Matrix>& generator_actions() const noexcept { return generator_actions_; }
  const Matrix& generator_action(std::size_t slot) const { return generator_actions_.at(slot); }
  const std::vector<Matrix>& actions() const;
  const Matrix& action(std::size_t i) const { return actions().at(i); }
  /// Action of an arbitrary algebra element.
  Matrix act(const Vec& element) const;
  const Matrix& pivot_action() const;
  const Matrix& pivot_inverse_action() const;

  std::uint64_t fingerprint() const;

 private:
  ModuleRep(HopfPtr algebra, std::string label, std::size_t dim);

  HopfPtr algebra_;
  std::string label_;
  std::size_t dim_;
  std::vector<Matrix> generator_actions_;

  mutable std::once_flag actions_once_;
  mutable std::vector<Matrix> actions_;
  mutable std::once_flag pivot_once_;
  mutable std::optional<Matrix> pivot_;
  mutable std::optional<Matrix> pivot_inverse_;
  mutable std::once_flag fingerprint_once_;
  mutable std::uint64_t fingerprint_ = 0;
};

/// Unit acts as identity and rho(g) rho(b_j) = rho(g b_j) for generators g and
/// all basis elements b_j, which with generator spanning gives every module axiom.
ValidationReport validate_module(const ModuleRep& m);

/// Same algebra and identical generator actions.
bool same_module(const ModuleRep& a, const ModuleRep& b);

/// The unit object: each basis element acts by its counit value.
ModulePtr trivial_module(const HopfPtr& h);
/// Left regular representation.
ModulePtr regular_module(const HopfPtr& h);

/// A module map, matrix of shape target.dim x source.dim.
class Morphism {
 public:
  /// Checks that the matrix intertwines the generator actions.
  Morphism(ModulePtr source, ModulePtr target, Matrix matrix);
  static Morphism unchecked(ModulePtr source, ModulePtr target, Matrix matrix);
  static Morphism identity(const ModulePtr& m);
  static Morphism zero(const ModulePtr& source, const ModulePtr& target);

  const ModulePtr& source() const noexcept { return source_; }
  const ModulePtr& target() const noexcept { return target_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  bool intertwines() const;
  bool is_zero() const { return matrix_.is_zero(); }

  /// Composition: (f * g) = f o g.
  friend Morphism operator*(const Morphism& f, const Morphism& g);
  friend Morphism operator+(const Morphism& f, const Morphism& g);
  friend Morphism operator-(const Morphism& f, const Morphism& g);
  friend Morphism operator*(const Scalar& s, const Morphism& f);

 private:
  struct Unchecked {};
  Morphism(ModulePtr source, ModulePtr target, Matrix matrix, Unchecked);

  ModulePtr source_;
  ModulePtr target_;
  Matrix matrix_;
};

}  // namespace modtrace

#endif  // MODTRACE_MODULE_HPP
