#include "modtrace/hopf.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "kernels.hpp"
#include "modtrace/errors.hpp"
#include "modtrace/linalg.hpp"

namespace modtrace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 1099511628211ull;
  }
  return state;
}

namespace {

void check_field(const Scalar& s, const FieldSpec& f, const char* what) {
  if (s.field() != f) throw MalformedInput(std::string(what) + ": scalar over " + s.field().to_string() + ", expected " +
                                           f.to_string());
}

void check_index(std::size_t idx, std::size_t dim, const char* what) {
  if (idx >= dim)
    throw MalformedInput(std::string(what) + ": index " + std::to_string(idx) + " out of range for dimension " +
                         std::to_string(dim));
}

// Sums duplicate (i, j, k) entries and drops zeros, sorted by (i, j, k).
std::vector<StructureTerm> merge_terms(std::vector<StructureTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const StructureTerm& a, const StructureTerm& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  std::vector<StructureTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().i == t.i && out.back().j == t.j && out.back().k == t.k)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const StructureTerm& t) { return t.coeff.is_zero(); }),
            out.end());
  return out;
}

std::string witness_string(const std::vector<std::size_t>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

}  // namespace

HopfPtr HopfPresentation::create(HopfData data) {
  const FieldSpec& f = data.field;
  const std::size_t n = data.dim;
  if (n == 0) throw MalformedInput("Hopf algebra dimension must be positive");
  if (data.basis_labels.empty())
    for (std::size_t i = 0; i < n; ++i) data.basis_labels.push_back("b" + std::to_string(i));
  if (data.basis_labels.size() != n) throw MalformedInput("basis_labels length differs from dim");
  for (const auto* terms : {&data.mult, &data.comult})
    for (const auto& t : *terms) {
      check_index(t.i, n, "structure constant");
      check_index(t.j, n, "structure constant");
      check_index(t.k, n, "structure constant");
      check_field(t.coeff, f, "structure constant");
    }
  for (const auto* v : {&data.unit, &data.counit, &data.pivot}) {
    if (v->size() != n) throw MalformedInput("unit, counit and pivot need exactly dim entries");
    for (const auto& s : *v) check_field(s, f, "vector entry");
  }
  if (data.antipode.rows() != n || data.antipode.cols() != n) throw MalformedInput("antipode must be dim x dim");
  if (data.antipode.field() != f) throw MalformedInput("antipode over a different field");
  if (data.generators.empty()) throw MalformedInput("generator subset is empty");
  for (std::size_t g : data.generators) check_index(g, n, "generator");
  data.mult = merge_terms(std::move(data.mult));
  data.comult = merge_terms(std::move(data.comult));
  return HopfPtr(new HopfPresentation(std::move(data)));
}

HopfPresentation::HopfPresentation(HopfData data) : data_(std::move(data)) {
  const std::size_t n = data_.dim;
  products_.resize(n * n);
  for (const auto& t : data_.mult) products_[t.i * n + t.j].emplace_back(t.k, t.coeff);
  coproducts_.resize(n);
  for (const auto& t : data_.comult) coproducts_[t.i].push_back({t.j, t.k, t.coeff});

  std::ostringstream os;
  os << data_.name << '|' << data_.field.to_string() << '|' << n << '|';
  for (const auto& l : data_.basis_labels) os << l << ',';
  os << "|m";
  for (const auto& t : data_.mult) os << t.i << ',' << t.j << ',' << t.k << ',' << t.coeff << ';';
  os << "|c";
  for (const auto& t : data_.comult) os << t.i << ',' << t.j << ',' << t.k << ',' << t.coeff << ';';
  for (const auto* v : {&data_.unit, &data_.counit, &data_.pivot}) {
    os << '|';
    for (const auto& s : *v) os << s << ',';
  }
  os << "|s" << data_.antipode.to_string() << "|g";
  for (auto g : data_.generators) os << g << ',';
  fingerprint_ = fnv1a(os.str());
}

Vec HopfPresentation::zero_vector() const { return Vec(data_.dim, data_.field.zero()); }

Vec HopfPresentation::basis_vector(std::size_t i) const {
  Vec v = zero_vector();
  v.at(i) = data_.field.one();
  return v;
}

Vec HopfPresentation::multiply(const Vec& x, const Vec& y) const {
  const std::size_t n = data_.dim;
  if (x.size() != n || y.size() != n) throw DimensionMismatch("algebra element has the wrong length");
  std::vector<std::size_t> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i].is_zero()) xs.push_back(i);
    if (!y[i].is_zero()) ys.push_back(i);
  }
  Vec r = zero_vector();
  for (std::size_t i : xs)
    for (std::size_t j : ys) {
      const Scalar c = x[i] * y[j];
      for (const auto& [k, s] : products_[i * n + j]) r[k] += c * s;
    }
  return r;
}

Vec HopfPresentation::apply_antipode(const Vec& x) const {
  const std::size_t n = data_.dim;
  Vec r = zero_vector();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      Scalar s = data_.antipode.at(k, i);
      if (!s.is_zero()) r[k] += x[i] * s;
    }
  }
  return r;
}

Scalar HopfPresentation::apply_counit(const Vec& x) const {
  Scalar r = data_.field.zero();
  for (std::size_t i = 0; i < data_.dim; ++i)
    if (!x[i].is_zero()) r += x[i] * data_.counit[i];
  return r;
}

Matrix HopfPresentation::left_multiplication(std::size_t i) const {
  const std::size_t n = data_.dim;
  Matrix m(data_.field, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [k, s] : products_[i * n + j]) m.set(k, j, s);
  return m;
}

Matrix HopfPresentation::right_multiplication(std::size_t i) const {
  const std::size_t n = data_.dim;
  Matrix m(data_.field, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [k, s] : products_[j * n + i]) m.set(k, j, s);
  return m;
}

Matrix HopfPresentation::left_multiplication(const Vec& x) const {
  Matrix m(data_.field, data_.dim, data_.dim);
  for (std::size_t i = 0; i < data_.dim; ++i)
    if (!x[i].is_zero()) m += left_multiplication(i) * x[i];
  return m;
}

Matrix HopfPresentation::right_multiplication(const Vec& x) const {
  Matrix m(data_.field, data_.dim, data_.dim);
  for (std::size_t i = 0; i < data_.dim; ++i)
    if (!x[i].is_zero()) m += right_multiplication(i) * x[i];
  return m;
}

const Vec& HopfPresentation::pivot_inverse() const {
  std::call_once(pivot_once_, [&] {
    auto sol = solve_linear(left_multiplication(data_.pivot), Matrix::column(data_.field, data_.unit));
    if (sol.consistent() && sol.kernel.cols() == 0) {
      Vec v;
      for (std::size_t i = 0; i < data_.dim; ++i) v.push_back(sol.particular->at(i, 0));
      pivot_inverse_ = std::move(v);
    }
  });
  if (!pivot_inverse_) throw InvalidHopfData("pivot element is not invertible");
  return *pivot_inverse_;
}

const GeneratorSpan& HopfPresentation::span() const {
  std::call_once(span_once_, [&] {
    const std::size_t n = data_.dim;
    detail::ScalarOps ops(data_.field);
    detail::EchelonTracker<detail::ScalarOps> tracker(ops, n);
    GeneratorSpan span;
    std::vector<Vec> values;
    Vec coords;
    if (tracker.insert_or_express(data_.unit, coords)) {
      span_error_ = "unit element is zero";
      return;
    }
    values.push_back(data_.unit);
    span.words.push_back({GeneratorSpan::npos, 0});
    for (std::size_t t = 0; t < values.size() && tracker.size() < n; ++t) {
      for (std::size_t slot = 0; slot < data_.generators.size() && tracker.size() < n; ++slot) {
        Vec w = multiply(basis_vector(data_.generators[slot]), values[t]);
        if (!tracker.insert_or_express(w, coords)) {
          values.push_back(std::move(w));
          span.words.push_back({t, slot});
        }
      }
    }
    if (tracker.size() < n) {
      span_error_ = "generator monomials span only " + std::to_string(tracker.size()) + " of " + std::to_string(n) +
                    " dimensions";
      return;
    }
    span.to_basis.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      Vec c = tracker.express(basis_vector(k));
      for (std::size_t t = 0; t < c.size(); ++t)
        if (!c[t].is_zero()) span.to_basis[k].emplace_back(t, c[t]);
    }
    span_ = std::move(span);
  });
  if (!span_) throw InvalidHopfData(span_error_);
  return *span_;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* ValidationReport::first_failure() const {
  for (const auto& a : axioms)
    if (!a.passed) return &a;
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& a : axioms) {
    os << a.name << ": " << (a.passed ? "pass" : "FAIL");
    if (!a.passed) {
      if (!a.witness.empty()) os << " witness (" << witness_string(a.witness) << ")";
      if (!a.detail.empty()) os << " " << a.detail;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

using Tensor2 = std::map<std::pair<std::size_t, std::size_t>, Scalar>;
using Tensor3 = std::map<std::array<std::size_t, 3>, Scalar>;

template <class Map, class Key>
void accumulate(Map& m, const Key& key, const Scalar& c) {
  auto it = m.find(key);
  if (it == m.end())
    m.emplace(key, c);
  else
    it->second += c;
}

template <class Map>
bool same_tensor(const Map& a, const Map& b) {
  auto nonzero = [](const Map& m) {
    Map out;
    for (const auto& [k, v] : m)
      if (!v.is_zero()) out.emplace(k, v);
    return out;
  };
  return nonzero(a) == nonzero(b);
}

Tensor2 coproduct_of(const HopfPresentation& h, const Vec& x) {
  Tensor2 t;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& term : h.coproduct(i)) accumulate(t, std::make_pair(term.left, term.right), x[i] * term.coeff);
  }
  return t;
}

AxiomResult check(const std::string& name) { return AxiomResult{name, true, {}, {}}; }

void fail(AxiomResult& r, std::vector<std::size_t> witness, std::string detail = {}) {
  if (!r.passed) return;
  r.passed = false;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
}

}  // namespace

ValidationReport validate_hopf(const HopfPresentation& h) {
  ValidationReport report;
  const std::size_t n = h.dim();

  // Unit laws.
  AxiomResult unit = check("unit");
  for (std::size_t j = 0; j < n && unit.passed; ++j) {
    Vec b = h.basis_vector(j);
    if (h.multiply(h.unit(), b) != b) fail(unit, {j}, "1*b != b");
    if (h.multiply(b, h.unit()) != b) fail(unit, {j}, "b*1 != b");
  }
  report.axioms.push_back(unit);

  AxiomResult span = check("generators_span");
  try {
    h.span();
  } catch (const InvalidHopfData& e) {
    fail(span, {}, e.what());
  }
  report.axioms.push_back(span);

  // Associativity on (generator, basis, basis); with the unit law and spanning
  // this gives associativity everywhere.
  AxiomResult assoc = check("associativity");
  for (std::size_t g : h.generators()) {
    for (std::size_t j = 0; j < n && assoc.passed; ++j) {
      Vec gj = h.multiply(h.basis_vector(g), h.basis_vector(j));
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = h.multiply(gj, h.basis_vector(k));
        Vec rhs = h.multiply(h.basis_vector(g), h.multiply(h.basis_vector(j), h.basis_vector(k)));
        if (lhs != rhs) {
          fail(assoc, {g, j, k});
          break;
        }
      }
    }
  }
  report.axioms.push_back(assoc);

  // Counit and comultiplication are algebra maps (checked on generator products).
  AxiomResult counit_mult = check("counit_multiplicative");
  if (!h.apply_counit(h.unit()).is_one()) fail(counit_mult, {}, "eps(1) != 1");
  for (std::size_t g : h.generators())
    for (std::size_t j = 0; j < n && counit_mult.passed; ++j) {
      Scalar lhs = h.apply_counit(h.multiply(h.basis_vector(g), h.basis_vector(j)));
      if (lhs != h.counit()[g] * h.counit()[j]) fail(counit_mult, {g, j});
    }
  report.axioms.push_back(counit_mult);

  AxiomResult comult_mult = check("comultiplication_multiplicative");
  {
    Tensor2 unit_unit;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!h.unit()[a].is_zero() && !h.unit()[b].is_zero())
          accumulate(unit_unit, std::make_pair(a, b), h.unit()[a] * h.unit()[b]);
    if (!same_tensor(coproduct_of(h, h.unit()), unit_unit)) fail(comult_mult, {}, "Delta(1) != 1 (x) 1");
  }
  for (std::size_t g : h.generators())
    for (std::size_t j = 0; j < n && comult_mult.passed; ++j) {
      Tensor2 lhs = coproduct_of(h, h.multiply(h.basis_vector(g), h.basis_vector(j)));
      Tensor2 rhs;
      for (const auto& x : h.coproduct(g))
        for (const auto& y : h.coproduct(j)) {
          const Scalar c = x.coeff * y.coeff;
          const auto& left = h.product(x.left, y.left);
          const auto& right = h.product(x.right, y.right);
          for (const auto& [a, sa] : left)
            for (const auto& [b, sb] : right) accumulate(rhs, std::make_pair(a, b), c * sa * sb);
        }
      if (!same_tensor(lhs, rhs)) fail(comult_mult, {g, j});
    }
  report.axioms.push_back(comult_mult);

  AxiomResult coassoc = check("coassociativity");
  for (std::size_t i = 0; i < n && coassoc.passed; ++i) {
    Tensor3 lhs, rhs;
    for (const auto& t : h.coproduct(i)) {
      for (const auto& u : h.coproduct(t.left))
        accumulate(lhs, std::array<std::size_t, 3>{u.left, u.right, t.right}, t.coeff * u.coeff);
      for (const auto& u : h.coproduct(t.right))
        accumulate(rhs, std::array<std::size_t, 3>{t.left, u.left, u.right}, t.coeff * u.coeff);
    }
    if (!same_tensor(lhs, rhs)) fail(coassoc, {i});
  }
  report.axioms.push_back(coassoc);

  AxiomResult counit_law = check("counit_law");
  for (std::size_t i = 0; i < n && counit_law.passed; ++i) {
    Vec left = h.zero_vector(), right = h.zero_vector();
    for (const auto& t : h.coproduct(i)) {
      left[t.right] += h.counit()[t.left] * t.coeff;
      right[t.left] += h.counit()[t.right] * t.coeff;
    }
    if (left != h.basis_vector(i) || right != h.basis_vector(i)) fail(counit_law, {i});
  }
  report.axioms.push_back(counit_law);

  AxiomResult antipode = check("antipode");
  for (std::size_t i = 0; i < n && antipode.passed; ++i) {
    Vec left = h.zero_vector(), right = h.zero_vector();
    for (const auto& t : h.coproduct(i)) {
      Vec a = h.multiply(h.apply_antipode(h.basis_vector(t.left)), h.basis_vector(t.right));
      Vec b = h.multiply(h.basis_vector(t.left), h.apply_antipode(h.basis_vector(t.right)));
      for (std::size_t k = 0; k < n; ++k) {
        left[k] += t.coeff * a[k];
        right[k] += t.coeff * b[k];
      }
    }
    Vec expected = h.unit();
    for (auto& x : expected) x *= h.counit()[i];
    if (left != expected) fail(antipode, {i}, "S(b_(1)) b_(2) != eps(b) 1");
    else if (right != expected) fail(antipode, {i}, "b_(1) S(b_(2)) != eps(b) 1");
  }
  report.axioms.push_back(antipode);
  return report;
}

ValidationReport validate_pivot(const HopfPresentation& h) {
  ValidationReport report;
  const std::size_t n = h.dim();
  const Vec& g = h.pivot();

  AxiomResult invertible = check("pivot_invertible");
  try {
    h.pivot_inverse();
  } catch (const InvalidHopfData& e) {
    fail(invertible, {}, e.what());
  }
  report.axioms.push_back(invertible);

  AxiomResult grouplike = check("pivot_grouplike");
  if (!h.apply_counit(g).is_one()) fail(grouplike, {}, "eps(g) != 1");
  Tensor2 gg;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!g[a].is_zero() && !g[b].is_zero()) accumulate(gg, std::make_pair(a, b), g[a] * g[b]);
  if (!same_tensor(coproduct_of(h, g), gg)) fail(grouplike, {}, "Delta(g) != g (x) g");
  report.axioms.push_back(grouplike);

  // S^2(x) g = g x for every basis element x.
  AxiomResult conj = check("pivot_conjugation");
  for (std::size_t i = 0; i < n && conj.passed; ++i) {
    Vec x = h.basis_vector(i);
    Vec s2 = h.apply_antipode(h.apply_antipode(x));
    if (h.multiply(s2, g) != h.multiply(g, x)) fail(conj, {i}, "S^2(" + h.basis_labels()[i] + ") != g x g^-1");
  }
  report.axioms.push_back(conj);
  return report;
}

IntegralSpace integral_space(const HopfPresentation& h, Side side) {
  const std::size_t n = h.dim();
  // h L = eps(h) L is multiplicative in h, so generators suffice.
  std::vector<Matrix> blocks;
  for (std::size_t g : h.generators()) {
    Matrix m = side == Side::left ? h.left_multiplication(g) : h.right_multiplication(g);
    m -= Matrix::identity(h.field(), n) * h.counit()[g];
    blocks.push_back(std::move(m));
  }
  Matrix ker = nullspace(vstack(blocks));
  if (ker.cols() != 1)
    throw InvalidHopfData(std::string(side == Side::left ? "left" : "right") + " integral space has dimension " +
                          std::to_string(ker.cols()) + ", expected 1");
  IntegralSpace space{side, {}};
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(ker.at(i, 0));
  space.basis.push_back(std::move(v));
  return space;
}

bool is_unimodular(const HopfPresentation& h) {
  IntegralSpace left = integral_space(h, Side::left);
  IntegralSpace right = integral_space(h, Side::right);
  Matrix both = Matrix::from_rows(h.field(), {left.basis[0], right.basis[0]});
  return rank(both) == 1;
}

}  // namespace modtrace
