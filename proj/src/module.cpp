#include "modtrace/module.hpp"

#include <cstring>

#include "modtrace/errors.hpp"
#include "modtrace/linalg.hpp"

namespace modtrace {

ModuleRep::ModuleRep(HopfPtr algebra, std::string label, std::size_t dim)
    : algebra_(std::move(algebra)), label_(std::move(label)), dim_(dim) {}

namespace {

void check_square(const Matrix& m, std::size_t d, const FieldSpec& f) {
  if (m.rows() != d || m.cols() != d)
    throw MalformedInput("action matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected " + std::to_string(d) + "x" + std::to_string(d));
  if (m.field() != f) throw MalformedInput("action matrix over " + m.field().to_string() + ", expected " + f.to_string());
}

void throw_if_invalid(const ModuleRep& m) {
  ValidationReport r = validate_module(m);
  if (!r.passed()) throw InvalidHopfData("module '" + m.label() + "' fails validation:\n" + r.summary());
}

}  // namespace

ModulePtr ModuleRep::from_actions(HopfPtr algebra, std::string label, std::vector<Matrix> actions, bool validate) {
  if (!algebra) throw MalformedInput("module without an algebra");
  if (actions.size() != algebra->dim())
    throw MalformedInput("module needs " + std::to_string(algebra->dim()) + " action matrices, got " +
                         std::to_string(actions.size()));
  const std::size_t d = actions.empty() ? 0 : actions[0].rows();
  for (const auto& a : actions) check_square(a, d, algebra->field());
  auto* raw = new ModuleRep(algebra, std::move(label), d);
  ModulePtr m(raw);
  for (std::size_t g : algebra->generators()) raw->generator_actions_.push_back(actions[g]);
  std::call_once(raw->actions_once_, [&] { raw->actions_ = std::move(actions); });
  if (validate) throw_if_invalid(*m);
  return m;
}

ModulePtr ModuleRep::from_generator_actions(HopfPtr algebra, std::string label, std::vector<Matrix> generator_actions,
                                            bool validate) {
  if (!algebra) throw MalformedInput("module without an algebra");
  if (generator_actions.size() != algebra->generators().size())
    throw MalformedInput("module needs " + std::to_string(algebra->generators().size()) +
                         " generator action matrices, got " + std::to_string(generator_actions.size()));
  const std::size_t d = generator_actions.empty() ? 0 : generator_actions[0].rows();
  for (const auto& a : generator_actions) check_square(a, d, algebra->field());
  auto* raw = new ModuleRep(algebra, std::move(label), d);
  ModulePtr m(raw);
  raw->generator_actions_ = std::move(generator_actions);
  if (validate) throw_if_invalid(*m);
  return m;
}

const std::vector<Matrix>& ModuleRep::actions() const {
  std::call_once(actions_once_, [&] {
    const GeneratorSpan& span = algebra_->span();
    const FieldSpec& f = field();
    std::vector<Matrix> words;
    words.reserve(span.words.size());
    for (const auto& w : span.words) {
      if (w.parent == GeneratorSpan::npos)
        words.push_back(Matrix::identity(f, dim_));
      else
        words.push_back(generator_actions_[w.slot] * words[w.parent]);
    }
    std::vector<Matrix> acts;
    acts.reserve(algebra_->dim());
    for (std::size_t k = 0; k < algebra_->dim(); ++k) {
      Matrix a(f, dim_, dim_);
      for (const auto& [t, c] : span.to_basis[k]) a += c.is_one() ? words[t] : words[t] * c;
      acts.push_back(std::move(a));
    }
    actions_ = std::move(acts);
  });
  return actions_;
}

Matrix ModuleRep::act(const Vec& element) const {
  if (element.size() != algebra_->dim()) throw DimensionMismatch("algebra element has the wrong length");
  Matrix a(field(), dim_, dim_);
  const auto& acts = actions();
  for (std::size_t i = 0; i < element.size(); ++i)
    if (!element[i].is_zero()) a += element[i].is_one() ? acts[i] : acts[i] * element[i];
  return a;
}

const Matrix& ModuleRep::pivot_action() const {
  std::call_once(pivot_once_, [&] {
    pivot_ = act(algebra_->pivot());
    pivot_inverse_ = act(algebra_->pivot_inverse());
  });
  return *pivot_;
}

const Matrix& ModuleRep::pivot_inverse_action() const {
  pivot_action();
  return *pivot_inverse_;
}

std::uint64_t ModuleRep::fingerprint() const {
  std::call_once(fingerprint_once_, [&] {
    std::uint64_t h = fnv1a(std::to_string(algebra_->fingerprint()) + "|" + std::to_string(dim_));
    for (const auto& m : generator_actions_) {
      if (m.is_prime()) {
        const auto& r = m.residues();
        h = fnv1a(std::string_view(reinterpret_cast<const char*>(r.data()), r.size() * sizeof(std::uint32_t)), h);
      } else {
        h = fnv1a(m.to_string(), h);
      }
      h = fnv1a("|", h);
    }
    fingerprint_ = h;
  });
  return fingerprint_;
}

ValidationReport validate_module(const ModuleRep& m) {
  ValidationReport report;
  const HopfPresentation& h = *m.algebra();
  AxiomResult span{"generators_span", true, {}, {}};
  try {
    h.span();
  } catch (const InvalidHopfData& e) {
    span.passed = false;
    span.detail = e.what();
    report.axioms.push_back(span);
    return report;
  }
  report.axioms.push_back(span);

  AxiomResult unit{"unit_acts_as_identity", true, {}, {}};
  if (!m.act(h.unit()).is_identity()) unit.passed = false;
  report.axioms.push_back(unit);

  AxiomResult axiom{"module_axiom", true, {}, {}};
  const auto& acts = m.actions();
  for (std::size_t slot = 0; slot < h.generators().size() && axiom.passed; ++slot) {
    const std::size_t g = h.generators()[slot];
    const Matrix& rg = m.generator_action(slot);
    if (rg != acts[g]) {
      axiom.passed = false;
      axiom.witness = {g};
      axiom.detail = "generator action disagrees with the full action list";
      break;
    }
    for (std::size_t j = 0; j < h.dim(); ++j) {
      Matrix rhs(m.field(), m.dim(), m.dim());
      for (const auto& [k, c] : h.product(g, j)) rhs += acts[k] * c;
      if (rg * acts[j] != rhs) {
        axiom.passed = false;
        axiom.witness = {g, j};
        axiom.detail = "rho(g) rho(b_j) != rho(g b_j)";
        break;
      }
    }
  }
  report.axioms.push_back(axiom);
  return report;
}

bool same_module(const ModuleRep& a, const ModuleRep& b) {
  if (&a == &b) return true;
  if (a.algebra() != b.algebra() && a.algebra()->fingerprint() != b.algebra()->fingerprint()) return false;
  return a.dim() == b.dim() && a.generator_actions() == b.generator_actions();
}

ModulePtr trivial_module(const HopfPtr& h) {
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < h->dim(); ++i) acts.push_back(Matrix::from_rows(h->field(), {{h->counit()[i]}}));
  return ModuleRep::from_actions(h, "trivial", std::move(acts));
}

ModulePtr regular_module(const HopfPtr& h) {
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < h->dim(); ++i) acts.push_back(h->left_multiplication(i));
  // The module axioms are associativity of the algebra itself.
  return ModuleRep::from_actions(h, "regular", std::move(acts), false);
}

// ---------------------------------------------------------------------------

Morphism::Morphism(ModulePtr source, ModulePtr target, Matrix matrix, Unchecked)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!source_ || !target_) throw MalformedInput("morphism without source or target");
  if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
    throw DimensionMismatch("morphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_->dim()) + "x" +
                            std::to_string(source_->dim()));
  if (source_->algebra() != target_->algebra() &&
      source_->algebra()->fingerprint() != target_->algebra()->fingerprint())
    throw MalformedInput("morphism between modules over different algebras");
}

Morphism::Morphism(ModulePtr source, ModulePtr target, Matrix matrix)
    : Morphism(std::move(source), std::move(target), std::move(matrix), Unchecked{}) {
  if (!intertwines()) throw InvalidHopfData("matrix does not intertwine the generator actions");
}

Morphism Morphism::unchecked(ModulePtr source, ModulePtr target, Matrix matrix) {
  return Morphism(std::move(source), std::move(target), std::move(matrix), Unchecked{});
}

Morphism Morphism::identity(const ModulePtr& m) { return unchecked(m, m, Matrix::identity(m->field(), m->dim())); }

Morphism Morphism::zero(const ModulePtr& source, const ModulePtr& target) {
  return unchecked(source, target, Matrix(source->field(), target->dim(), source->dim()));
}

bool Morphism::intertwines() const {
  for (std::size_t s = 0; s < source_->generator_actions().size(); ++s)
    if (target_->generator_action(s) * matrix_ != matrix_ * source_->generator_action(s)) return false;
  return true;
}

Morphism operator*(const Morphism& f, const Morphism& g) {
  if (!same_module(*f.source(), *g.target())) throw DimensionMismatch("composition of non-composable morphisms");
  return Morphism::unchecked(g.source(), f.target(), f.matrix() * g.matrix());
}

Morphism operator+(const Morphism& f, const Morphism& g) {
  if (!same_module(*f.source(), *g.source()) || !same_module(*f.target(), *g.target()))
    throw DimensionMismatch("sum of morphisms with different source or target");
  return Morphism::unchecked(f.source(), f.target(), f.matrix() + g.matrix());
}

Morphism operator-(const Morphism& f, const Morphism& g) {
  if (!same_module(*f.source(), *g.source()) || !same_module(*f.target(), *g.target()))
    throw DimensionMismatch("difference of morphisms with different source or target");
  return Morphism::unchecked(f.source(), f.target(), f.matrix() - g.matrix());
}

Morphism operator*(const Scalar& s, const Morphism& f) {
  return Morphism::unchecked(f.source(), f.target(), f.matrix() * s);
}

}  // namespace modtrace
