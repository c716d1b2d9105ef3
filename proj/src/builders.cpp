#include "modtrace/builders.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "modtrace/errors.hpp"

namespace modtrace {

namespace {

using Sparse = std::map<std::size_t, Scalar>;

void add_to(Sparse& s, std::size_t k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = s.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
  }
}

// An algebra presented by generators whose monomial words form the basis:
// basis element i equals generator[slot] times basis element parent, exactly.
struct WordSpec {
  std::string name;
  FieldSpec field;
  std::vector<std::string> labels;
  std::size_t unit = 0;
  std::vector<std::size_t> generators;
  std::vector<std::pair<std::size_t, std::size_t>> words;  // (slot, parent); ignored for the unit
  // gen_columns[slot][j] = generator times b_j
  std::vector<std::vector<Sparse>> gen_columns;
  std::vector<Sparse> gen_coproduct;  // key left * n + right
  std::vector<Scalar> gen_counit;
  std::vector<Sparse> gen_antipode;
  Sparse pivot;

  explicit WordSpec(FieldSpec f) : field(f) {}
};

HopfPtr build_from_words(const WordSpec& s) {
  const std::size_t n = s.labels.size();
  const FieldSpec& f = s.field;
  // Words must be listed so that parents come first; process in dependency order.
  std::vector<std::size_t> order;
  {
    std::vector<char> done(n, 0);
    done[s.unit] = 1;
    order.push_back(s.unit);
    bool progress = true;
    while (order.size() < n && progress) {
      progress = false;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && done[s.words[i].second]) {
          done[i] = 1;
          order.push_back(i);
          progress = true;
        }
    }
    if (order.size() != n) throw InternalError("builder words do not reach every basis element");
  }

  std::vector<Sparse> prod(n * n);
  for (std::size_t j = 0; j < n; ++j) add_to(prod[s.unit * n + j], j, f.one());
  for (std::size_t idx = 1; idx < n; ++idx) {
    const std::size_t i = order[idx];
    const auto [slot, parent] = s.words[i];
    for (std::size_t j = 0; j < n; ++j) {
      Sparse r;
      for (const auto& [k, c] : prod[parent * n + j])
        for (const auto& [k2, c2] : s.gen_columns[slot][k]) add_to(r, k2, c * c2);
      prod[i * n + j] = std::move(r);
    }
  }
  auto multiply = [&](const Sparse& x, const Sparse& y) {
    Sparse r;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) {
        const Scalar ab = a * b;
        for (const auto& [k, c] : prod[i * n + j]) add_to(r, k, ab * c);
      }
    return r;
  };
  auto multiply_tensor = [&](const Sparse& x, const Sparse& y) {
    Sparse r;
    for (const auto& [p, a] : x)
      for (const auto& [q, b] : y) {
        const Scalar ab = a * b;
        const auto& left = prod[(p / n) * n + q / n];
        const auto& right = prod[(p % n) * n + q % n];
        for (const auto& [k1, c1] : left)
          for (const auto& [k2, c2] : right) add_to(r, k1 * n + k2, ab * c1 * c2);
      }
    return r;
  };

  std::vector<Sparse> coprod(n), anti(n);
  std::vector<Scalar> counit(n, f.zero());
  add_to(coprod[s.unit], s.unit * n + s.unit, f.one());
  add_to(anti[s.unit], s.unit, f.one());
  counit[s.unit] = f.one();
  for (std::size_t idx = 1; idx < n; ++idx) {
    const std::size_t i = order[idx];
    const auto [slot, parent] = s.words[i];
    coprod[i] = multiply_tensor(s.gen_coproduct[slot], coprod[parent]);
    counit[i] = s.gen_counit[slot] * counit[parent];
    anti[i] = multiply(anti[parent], s.gen_antipode[slot]);
  }

  HopfData d(f);
  d.name = s.name;
  d.dim = n;
  d.basis_labels = s.labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : prod[i * n + j]) d.mult.push_back({i, j, k, c});
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [p, c] : coprod[i]) d.comult.push_back({i, p / n, p % n, c});
  d.unit = Vec(n, f.zero());
  d.unit[s.unit] = f.one();
  d.counit = counit;
  d.antipode = Matrix(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [k, c] : anti[i]) d.antipode.set(k, i, c);
  d.pivot = Vec(n, f.zero());
  for (const auto& [k, c] : s.pivot) d.pivot[k] = c;
  d.generators = s.generators;
  return HopfPresentation::create(std::move(d));
}

void require_valid(const HopfPresentation& h) {
  ValidationReport r = validate_hopf(h);
  if (!r.passed()) throw InternalError("builder output '" + h.name() + "' fails validation:\n" + r.summary());
  ValidationReport p = validate_pivot(h);
  if (!p.passed()) throw InternalError("builder output '" + h.name() + "' has an invalid pivot:\n" + p.summary());
}

std::vector<std::size_t> compose(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Matrix permutation_matrix(const FieldSpec& f, const std::vector<std::size_t>& perm) {
  Matrix m(f, perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m.set(perm[i], i, f.one());
  return m;
}

// Sum-zero submodule of the permutation module, basis u_i = e_i - e_{i+1}.
Matrix standard_matrix(const FieldSpec& f, const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  Matrix m(f, n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Vec y(n, f.zero());
    y[perm[i]] += f.one();
    y[perm[i + 1]] -= f.one();
    Scalar prefix = f.zero();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      prefix += y[k];
      m.set(k, i, prefix);
    }
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Groups

std::size_t GroupTable::inverse(std::size_t a) const {
  for (std::size_t b = 0; b < order; ++b)
    if (mul(a, b) == identity) return b;
  throw InvalidHopfData("group element without inverse");
}

GroupTable GroupTable::from_permutations(std::string name, const std::vector<std::vector<std::size_t>>& gens) {
  if (gens.empty()) throw MalformedInput("group needs at least one generator");
  const std::size_t points = gens[0].size();
  for (const auto& g : gens) {
    if (g.size() != points) throw MalformedInput("generator permutations act on different point sets");
    std::vector<std::size_t> s = g;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < points; ++i)
      if (s[i] != i) throw MalformedInput("generator is not a permutation");
  }
  std::vector<std::size_t> id(points);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<std::size_t>> elems{id};
  std::map<std::vector<std::size_t>, std::size_t> index{{id, 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      auto c = compose(g, elems[a]);
      if (index.emplace(c, elems.size()).second) {
        queue.push_back(elems.size());
        elems.push_back(std::move(c));
      }
    }
  }
  GroupTable t;
  t.name = std::move(name);
  t.order = elems.size();
  t.identity = 0;
  t.table.resize(t.order * t.order);
  for (std::size_t a = 0; a < t.order; ++a)
    for (std::size_t b = 0; b < t.order; ++b) t.table[a * t.order + b] = index.at(compose(elems[a], elems[b]));
  for (const auto& g : gens) {
    const std::size_t gi = index.at(g);
    if (std::find(t.generators.begin(), t.generators.end(), gi) == t.generators.end()) t.generators.push_back(gi);
  }
  t.permutations = std::move(elems);
  return t;
}

GroupTable GroupTable::symmetric(unsigned n) {
  if (n < 2) throw MalformedInput("symmetric group needs n >= 2");
  std::vector<std::size_t> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (unsigned i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  if (n == 2) return from_permutations("S2", {swap});
  return from_permutations("S" + std::to_string(n), {swap, cycle});
}

GroupTable GroupTable::cyclic(unsigned n) {
  if (n < 1) throw MalformedInput("cyclic group needs n >= 1");
  std::vector<std::size_t> cycle(n);
  for (unsigned i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return from_permutations("Z/" + std::to_string(n), {cycle});
}

GroupTable GroupTable::named(std::string_view name) {
  auto number = [&](std::size_t from) {
    const std::string digits(name.substr(from));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 2)
      throw MalformedInput("unknown group '" + std::string(name) + "'");
    return static_cast<unsigned>(std::stoul(digits));
  };
  if (name.size() >= 2 && name[0] == 'S') return symmetric(number(1));
  if (name.size() >= 2 && name[0] == 'C') return cyclic(number(1));
  if (name.size() >= 3 && name.substr(0, 2) == "Z/") return cyclic(number(2));
  throw MalformedInput("unknown group '" + std::string(name) + "' (expected S<n>, C<n> or Z/<n>)");
}

void validate_group(const GroupTable& g) {
  const std::size_t n = g.order;
  if (n == 0 || g.table.size() != n * n) throw InvalidHopfData("group table has the wrong size");
  for (std::size_t x : g.table)
    if (x >= n) throw InvalidHopfData("group table entry out of range");
  for (std::size_t a = 0; a < n; ++a) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a) throw InvalidHopfData("identity law fails");
    g.inverse(a);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) throw InvalidHopfData("group table is not associative");
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{g.identity};
  seen[g.identity] = 1;
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t s : g.generators) {
      const std::size_t b = g.mul(s, a);
      if (!seen[b]) {
        seen[b] = 1;
        stack.push_back(b);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(n))
    throw InvalidHopfData("generators do not generate the group");
}

// ---------------------------------------------------------------------------
// Families

ModulePtr Family::module(std::string_view name) const {
  for (const auto& [n, m] : modules)
    if (n == name) return m;
  if (name == "regular") return regular_module(algebra);
  throw MalformedInput("unknown module '" + std::string(name) + "' for " + algebra->name());
}

std::vector<std::string> Family::module_names() const {
  std::vector<std::string> out;
  for (const auto& [n, m] : modules) out.push_back(n);
  return out;
}

Family build_group_algebra(const FieldSpec& field, const GroupTable& g) {
  validate_group(g);
  const std::size_t n = g.order;
  HopfData d(field);
  d.name = "k" + g.name + "/" + field.to_string();
  d.dim = n;
  for (std::size_t a = 0; a < n; ++a) d.basis_labels.push_back(a == g.identity ? "e" : "g" + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d.mult.push_back({a, b, g.mul(a, b), field.one()});
  for (std::size_t a = 0; a < n; ++a) d.comult.push_back({a, a, a, field.one()});
  d.unit = Vec(n, field.zero());
  d.unit[g.identity] = field.one();
  d.counit = Vec(n, field.one());
  d.antipode = Matrix(field, n, n);
  for (std::size_t a = 0; a < n; ++a) d.antipode.set(g.inverse(a), a, field.one());
  d.pivot = d.unit;
  d.generators = g.generators;
  Family fam;
  fam.algebra = HopfPresentation::create(std::move(d));
  require_valid(*fam.algebra);
  fam.modules.emplace_back("trivial", trivial_module(fam.algebra));
  fam.simples.push_back("trivial");
  if (!g.permutations.empty() && g.permutations[0].size() >= 2) {
    std::vector<Matrix> perm, standard;
    for (std::size_t s : g.generators) {
      perm.push_back(permutation_matrix(field, g.permutations[s]));
      standard.push_back(standard_matrix(field, g.permutations[s]));
    }
    fam.modules.emplace_back("perm", ModuleRep::from_generator_actions(fam.algebra, "perm", std::move(perm)));
    fam.modules.emplace_back("N", ModuleRep::from_generator_actions(fam.algebra, "N", std::move(standard)));
    // Over F_2 the sum-zero module of S3 is simple and projective.
    if (g.name == "S3" && field.is_prime() && field.p() == 2) {
      fam.simples.push_back("N");
      fam.distinguished = "N";
    }
  }
  return fam;
}

Family build_drinfeld_double_group(const FieldSpec& field, const GroupTable& g) {
  validate_group(g);
  const std::size_t m = g.order;
  const std::size_t n = m * m;
  auto idx = [m](std::size_t x, std::size_t y) { return x * m + y; };
  HopfData d(field);
  d.name = "D(" + g.name + ")/" + field.to_string();
  d.dim = n;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) d.basis_labels.push_back("d" + std::to_string(x) + "*g" + std::to_string(y));
  // (delta_x y)(delta_x' y') = [x = y x' y^-1] delta_x (y y')
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t yi = g.inverse(y);
      for (std::size_t x2 = 0; x2 < m; ++x2)
        if (g.mul(g.mul(y, x2), yi) == x)
          for (std::size_t y2 = 0; y2 < m; ++y2) d.mult.push_back({idx(x, y), idx(x2, y2), idx(x, g.mul(y, y2)), field.one()});
    }
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t a = 0; a < m; ++a) {
        const std::size_t b = g.mul(g.inverse(a), x);  // a b = x
        d.comult.push_back({idx(x, y), idx(a, y), idx(b, y), field.one()});
      }
  d.unit = Vec(n, field.zero());
  for (std::size_t x = 0; x < m; ++x) d.unit[idx(x, g.identity)] = field.one();
  d.counit = Vec(n, field.zero());
  for (std::size_t y = 0; y < m; ++y) d.counit[idx(g.identity, y)] = field.one();
  d.antipode = Matrix(field, n, n);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t yi = g.inverse(y);
      d.antipode.set(idx(g.mul(g.mul(yi, g.inverse(x)), y), yi), idx(x, y), field.one());
    }
  d.pivot = d.unit;
  for (std::size_t x = 0; x < m; ++x) d.generators.push_back(idx(x, g.identity));
  for (std::size_t s : g.generators)
    for (std::size_t x = 0; x < m; ++x) d.generators.push_back(idx(x, s));
  Family fam;
  fam.algebra = HopfPresentation::create(std::move(d));
  require_valid(*fam.algebra);
  fam.modules.emplace_back("trivial", trivial_module(fam.algebra));
  fam.simples.push_back("trivial");
  return fam;
}

Family build_restricted_usl2(std::uint32_t p) {
  if (p == 2) throw Unsupported("restricted sl2 needs an odd prime");
  const FieldSpec f = FieldSpec::prime(p);
  const std::size_t n = static_cast<std::size_t>(p) * p * p;
  auto idx = [p](std::size_t a, std::size_t b, std::size_t c) { return (a * p + b) * p + c; };
  auto num = [&](long long v) { return f.from_int(v); };
  WordSpec s(f);
  s.name = "u(sl2)/F" + std::to_string(p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t c = 0; c < p; ++c)
        s.labels.push_back("e^" + std::to_string(a) + "f^" + std::to_string(b) + "h^" + std::to_string(c));
  s.unit = 0;
  const std::size_t E = idx(1, 0, 0), F = idx(0, 1, 0), H = idx(0, 0, 1);
  s.generators = {E, F, H};
  s.words.assign(n, {0, 0});
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t c = 0; c < p; ++c) {
        if (a > 0)
          s.words[idx(a, b, c)] = {0, idx(a - 1, b, c)};
        else if (b > 0)
          s.words[idx(a, b, c)] = {1, idx(a, b - 1, c)};
        else if (c > 0)
          s.words[idx(a, b, c)] = {2, idx(a, b, c - 1)};
      }
  // e^a f^b h^c (h + k): h^p = h folds the top power back.
  auto times_h_plus = [&](Sparse& out, std::size_t a, std::size_t b, std::size_t c, long long k, const Scalar& coeff) {
    add_to(out, idx(a, b, c + 1 == p ? 1 : c + 1), coeff);
    add_to(out, idx(a, b, c), coeff * num(k));
  };
  s.gen_columns.assign(3, std::vector<Sparse>(n));
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t c = 0; c < p; ++c) {
        const std::size_t j = idx(a, b, c);
        if (a + 1 < p) add_to(s.gen_columns[0][j], idx(a + 1, b, c), f.one());
        // f e^a = e^a f - a e^{a-1} (h + a - 1); then move h past f^b.
        Sparse& fc = s.gen_columns[1][j];
        if (b + 1 < p) add_to(fc, idx(a, b + 1, c), f.one());
        if (a > 0) {
          times_h_plus(fc, a - 1, b, c, static_cast<long long>(a) - 1 - 2 * static_cast<long long>(b),
                       -num(static_cast<long long>(a)));
        }
        times_h_plus(s.gen_columns[2][j], a, b, c, 2 * static_cast<long long>(a) - 2 * static_cast<long long>(b),
                     f.one());
      }
  s.gen_coproduct.resize(3);
  for (std::size_t slot = 0; slot < 3; ++slot) {
    const std::size_t x = s.generators[slot];
    add_to(s.gen_coproduct[slot], x * n + 0, f.one());
    add_to(s.gen_coproduct[slot], 0 * n + x, f.one());
    s.gen_antipode.push_back(Sparse{{x, -f.one()}});
  }
  s.gen_counit = {f.zero(), f.zero(), f.zero()};
  add_to(s.pivot, 0, f.one());

  Family fam;
  fam.algebra = build_from_words(s);
  require_valid(*fam.algebra);

  // Each of e, f, h acts with trace zero on sl2 under the adjoint action.
  const HopfPresentation& h = *fam.algebra;
  for (std::size_t x : s.generators) {
    Scalar tr = f.zero();
    for (std::size_t y : s.generators) {
      Vec bracket = h.multiply(h.basis_vector(x), h.basis_vector(y));
      Vec other = h.multiply(h.basis_vector(y), h.basis_vector(x));
      tr += bracket[y] - other[y];
    }
    if (!tr.is_zero()) throw InternalError("adjoint action of a generator has nonzero trace");
  }

  for (unsigned d = 0; d < p; ++d) {
    ModulePtr m = usl2_simple(fam.algebra, d);
    fam.modules.emplace_back("L" + std::to_string(d), m);
    fam.simples.push_back("L" + std::to_string(d));
  }
  fam.modules.emplace_back("trivial", fam.modules[0].second);
  fam.modules.emplace_back("St", fam.modules[p - 1].second);
  fam.distinguished = "St";
  return fam;
}

ModulePtr usl2_simple(const HopfPtr& usl2, unsigned d) {
  const FieldSpec& f = usl2->field();
  const std::uint32_t p = f.p();
  if (d >= p) throw MalformedInput("restricted simple modules have highest weight below p");
  const std::size_t dim = d + 1;
  Matrix e(f, dim, dim), fm(f, dim, dim), h(f, dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    h.set(i, i, f.from_int(static_cast<long long>(d) - 2 * static_cast<long long>(i)));
    if (i + 1 < dim) fm.set(i + 1, i, f.one());
    if (i > 0) e.set(i - 1, i, f.from_int(static_cast<long long>(i) * (static_cast<long long>(d) - i + 1)));
  }
  return ModuleRep::from_generator_actions(usl2, "L" + std::to_string(d), {e, fm, h});
}

Family build_small_quantum_sl2(unsigned l) {
  if (l < 3 || l % 2 == 0) throw MalformedInput("small quantum sl2 needs an odd l >= 3");
  const FieldSpec f = FieldSpec::cyclotomic(l);
  const std::size_t n = static_cast<std::size_t>(l) * l * l;
  auto idx = [l](std::size_t a, std::size_t b, std::size_t c) { return (a * l + b) * l + c; };
  const Scalar z = f.zeta();
  const Scalar zi = z.inverse();
  const Scalar denom = (z - zi).inverse();
  auto zpow = [&](long long k) {
    k %= static_cast<long long>(l);
    if (k < 0) k += l;
    return z.pow(static_cast<std::uint64_t>(k));
  };
  WordSpec s(f);
  s.name = "u_zeta(sl2)/Q(zeta_" + std::to_string(l) + ")";
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b)
      for (std::size_t c = 0; c < l; ++c)
        s.labels.push_back("E^" + std::to_string(a) + "F^" + std::to_string(b) + "K^" + std::to_string(c));
  s.unit = 0;
  const std::size_t E = idx(1, 0, 0), F = idx(0, 1, 0), K = idx(0, 0, 1), Kinv = idx(0, 0, l - 1);
  s.generators = {E, F, K};
  s.words.assign(n, {0, 0});
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b)
      for (std::size_t c = 0; c < l; ++c) {
        if (a > 0)
          s.words[idx(a, b, c)] = {0, idx(a - 1, b, c)};
        else if (b > 0)
          s.words[idx(a, b, c)] = {1, idx(a, b - 1, c)};
        else if (c > 0)
          s.words[idx(a, b, c)] = {2, idx(a, b, c - 1)};
      }
  s.gen_columns.assign(3, std::vector<Sparse>(n));
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b)
      for (std::size_t c = 0; c < l; ++c) {
        const std::size_t j = idx(a, b, c);
        if (a + 1 < l) add_to(s.gen_columns[0][j], idx(a + 1, b, c), f.one());
        // F E^a = E^a F - E^{a-1} (c1 K - c2 K^-1) / (z - z^-1), then K past F^b.
        Sparse& fc = s.gen_columns[1][j];
        if (b + 1 < l) add_to(fc, idx(a, b + 1, c), f.one());
        if (a > 0) {
          Scalar c1 = f.zero(), c2 = f.zero();
          for (std::size_t m = 0; m < a; ++m) {
            c1 += zpow(2 * static_cast<long long>(m));
            c2 += zpow(-2 * static_cast<long long>(m));
          }
          add_to(fc, idx(a - 1, b, (c + 1) % l), -(c1 * zpow(-2 * static_cast<long long>(b)) * denom));
          add_to(fc, idx(a - 1, b, (c + l - 1) % l), c2 * zpow(2 * static_cast<long long>(b)) * denom);
        }
        add_to(s.gen_columns[2][j], idx(a, b, (c + 1) % l),
               zpow(2 * static_cast<long long>(a) - 2 * static_cast<long long>(b)));
      }
  s.gen_coproduct.resize(3);
  // Delta(E) = 1 (x) E + E (x) K, Delta(F) = K^-1 (x) F + F (x) 1, Delta(K) = K (x) K
  add_to(s.gen_coproduct[0], 0 * n + E, f.one());
  add_to(s.gen_coproduct[0], E * n + K, f.one());
  add_to(s.gen_coproduct[1], Kinv * n + F, f.one());
  add_to(s.gen_coproduct[1], F * n + 0, f.one());
  add_to(s.gen_coproduct[2], K * n + K, f.one());
  s.gen_counit = {f.zero(), f.zero(), f.one()};
  // S(E) = -E K^-1, S(F) = -K F = -z^-2 F K, S(K) = K^-1
  s.gen_antipode = {Sparse{{idx(1, 0, l - 1), -f.one()}}, Sparse{{idx(0, 1, 1), -zpow(-2)}}, Sparse{{Kinv, f.one()}}};
  add_to(s.pivot, K, f.one());

  Family fam;
  fam.algebra = build_from_words(s);
  require_valid(*fam.algebra);
  fam.modules.emplace_back("trivial", trivial_module(fam.algebra));

  // Steinberg: K v_i = z^{l-1-2i} v_i, F v_i = v_{i+1}, E v_i = [i][l-i] v_{i-1}.
  auto qint = [&](long long k) { return (zpow(k) - zpow(-k)) * denom; };
  Matrix me(f, l, l), mf(f, l, l), mk(f, l, l);
  for (std::size_t i = 0; i < l; ++i) {
    mk.set(i, i, zpow(static_cast<long long>(l) - 1 - 2 * static_cast<long long>(i)));
    if (i + 1 < l) mf.set(i + 1, i, f.one());
    if (i > 0) me.set(i - 1, i, qint(static_cast<long long>(i)) * qint(static_cast<long long>(l - i)));
  }
  fam.modules.emplace_back("St", ModuleRep::from_generator_actions(fam.algebra, "St", {me, mf, mk}));
  fam.simples = {"trivial", "St"};
  fam.distinguished = "St";
  return fam;
}

Family build_sweedler(const FieldSpec& field) {
  if (field.is_prime() && field.p() == 2) throw MalformedInput("Sweedler's algebra needs characteristic other than 2");
  const Scalar one = field.one();
  WordSpec s(field);
  s.name = "Sweedler/" + field.to_string();
  s.labels = {"1", "g", "x", "gx"};
  s.unit = 0;
  s.generators = {1, 2};
  s.words = {{0, 0}, {0, 0}, {1, 0}, {0, 2}};
  s.gen_columns.assign(2, std::vector<Sparse>(4));
  // g: 1 -> g, g -> 1, x -> gx, gx -> x
  s.gen_columns[0][0] = {{1, one}};
  s.gen_columns[0][1] = {{0, one}};
  s.gen_columns[0][2] = {{3, one}};
  s.gen_columns[0][3] = {{2, one}};
  // x: 1 -> x, g -> xg = -gx, x -> 0, gx -> 0
  s.gen_columns[1][0] = {{2, one}};
  s.gen_columns[1][1] = {{3, -one}};
  s.gen_coproduct.resize(2);
  add_to(s.gen_coproduct[0], 1 * 4 + 1, one);
  add_to(s.gen_coproduct[1], 2 * 4 + 0, one);
  add_to(s.gen_coproduct[1], 1 * 4 + 2, one);
  s.gen_counit = {one, field.zero()};
  s.gen_antipode = {Sparse{{1, one}}, Sparse{{3, -one}}};
  add_to(s.pivot, 1, one);

  Family fam;
  fam.algebra = build_from_words(s);
  require_valid(*fam.algebra);
  fam.modules.emplace_back("trivial", trivial_module(fam.algebra));
  auto chi = ModuleRep::from_generator_actions(fam.algebra, "chi",
                                               {Matrix::from_rows(field, {{-one}}), Matrix(field, 1, 1)});
  fam.modules.emplace_back("chi", chi);
  fam.simples = {"trivial", "chi"};
  return fam;
}

}  // namespace modtrace
