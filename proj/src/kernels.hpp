// Elimination and product kernels shared by the Matrix, linalg and module code.
// Each kernel is written once over an Ops policy: FpOps works on raw residues,
// ScalarOps on exact Scalars for Q and Q(zeta_l).
#ifndef MODTRACE_SRC_KERNELS_HPP
#define MODTRACE_SRC_KERNELS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "modtrace/errors.hpp"
#include "modtrace/field.hpp"
#include "modtrace/matrix.hpp"

namespace modtrace::detail {

struct FpOps {
  using T = std::uint32_t;
  std::uint32_t p;

  T zero() const { return 0; }
  T one() const { return 1 % p; }
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const {
    T s = a + b;
    return s >= p ? s - p : s;
  }
  T sub(T a, T b) const { return a >= b ? a - b : a + (p - b); }
  T mul(T a, T b) const { return static_cast<T>(static_cast<std::uint64_t>(a) * b % p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    if (a == 0) throw DivisionByZero("inverse of zero residue");
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return static_cast<T>(t < 0 ? t + p : t);
  }
  // row[k] -= f * src[k] for k in [from, n)
  void axpy_neg(T* row, const T* src, T f, std::size_t from, std::size_t n) const {
    const std::uint64_t nf = p - f;
    for (std::size_t k = from; k < n; ++k)
      if (src[k] != 0) row[k] = static_cast<T>((row[k] + nf * src[k]) % p);
  }
  void scale(T* row, T f, std::size_t from, std::size_t n) const {
    for (std::size_t k = from; k < n; ++k) row[k] = mul(row[k], f);
  }
};

struct ScalarOps {
  using T = Scalar;
  FieldSpec field;
  Scalar zero_;
  Scalar one_;

  explicit ScalarOps(const FieldSpec& f) : field(f), zero_(f.zero()), one_(f.one()) {}

  const T& zero() const { return zero_; }
  const T& one() const { return one_; }
  bool is_zero(const T& a) const { return a.is_zero(); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return a.inverse(); }
  void axpy_neg(T* row, const T* src, const T& f, std::size_t from, std::size_t n) const {
    for (std::size_t k = from; k < n; ++k)
      if (!src[k].is_zero()) row[k] -= f * src[k];
  }
  void scale(T* row, const T& f, std::size_t from, std::size_t n) const {
    for (std::size_t k = from; k < n; ++k)
      if (!row[k].is_zero()) row[k] *= f;
  }
};

template <class Ops>
std::vector<typename Ops::T>& storage(Matrix& m);
template <>
inline std::vector<std::uint32_t>& storage<FpOps>(Matrix& m) { return m.residues(); }
template <>
inline std::vector<Scalar>& storage<ScalarOps>(Matrix& m) { return m.scalars(); }

template <class Ops>
const std::vector<typename Ops::T>& storage(const Matrix& m);
template <>
inline const std::vector<std::uint32_t>& storage<FpOps>(const Matrix& m) { return m.residues(); }
template <>
inline const std::vector<Scalar>& storage<ScalarOps>(const Matrix& m) { return m.scalars(); }

/// Calls fn(ops) with the Ops policy matching the field.
template <class Fn>
decltype(auto) dispatch(const FieldSpec& field, Fn&& fn) {
  if (field.is_prime()) return fn(FpOps{field.p()});
  return fn(ScalarOps(field));
}

/// c = a (n x m) * b (m x k), all row-major.
template <class Ops>
void multiply(const Ops& ops, const typename Ops::T* a, const typename Ops::T* b, typename Ops::T* c,
              std::size_t n, std::size_t m, std::size_t k) {
  using T = typename Ops::T;
  if constexpr (std::is_same_v<Ops, FpOps>) {
    const std::uint64_t p = ops.p;
    std::vector<std::uint64_t> acc(k);
    // Products of residues below 2^16 fit 2^32, so 2^31 of them can be summed unreduced.
    const bool small = p < (1u << 16);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t t = 0; t < m; ++t) {
        const std::uint64_t x = a[i * m + t];
        if (x == 0) continue;
        const T* brow = b + t * k;
        if (small) {
          for (std::size_t j = 0; j < k; ++j) acc[j] += x * brow[j];
        } else {
          for (std::size_t j = 0; j < k; ++j) acc[j] = (acc[j] + x * brow[j]) % p;
        }
      }
      for (std::size_t j = 0; j < k; ++j) c[i * k + j] = static_cast<T>(acc[j] % p);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) c[i * k + j] = ops.zero();
      for (std::size_t t = 0; t < m; ++t) {
        const T& x = a[i * m + t];
        if (ops.is_zero(x)) continue;
        for (std::size_t j = 0; j < k; ++j)
          if (!ops.is_zero(b[t * k + j])) c[i * k + j] += x * b[t * k + j];
      }
    }
  }
}

/// In-place reduced row echelon form with first-nonzero pivoting. Pivots are
/// searched only in columns below col_limit. Returns the pivot columns.
template <class Ops>
std::vector<std::size_t> rref(const Ops& ops, std::vector<typename Ops::T>& a, std::size_t rows, std::size_t cols,
                              std::size_t col_limit) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < col_limit && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (!ops.is_zero(a[r * cols + c])) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t k = c; k < cols; ++k) std::swap(a[piv * cols + k], a[rank * cols + k]);
    T* prow = &a[rank * cols];
    if (!(prow[c] == ops.one())) ops.scale(prow, ops.inv(prow[c]), c, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      T f = a[r * cols + c];
      if (ops.is_zero(f)) continue;
      ops.axpy_neg(&a[r * cols], prow, f, c, cols);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

/// Nullspace of an rref'd matrix as a list of vectors of length cols.
template <class Ops>
std::vector<std::vector<typename Ops::T>> nullspace_from_rref(const Ops& ops, const std::vector<typename Ops::T>& a,
                                                              std::size_t cols,
                                                              const std::vector<std::size_t>& pivots) {
  using T = typename Ops::T;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(cols, ops.zero());
    v[f] = ops.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = ops.neg(a[i * cols + f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Incremental echelon basis of a subspace that also tracks how each reduced
/// row is written in terms of the vectors originally inserted.
template <class Ops>
class EchelonTracker {
 public:
  using T = typename Ops::T;

  EchelonTracker(const Ops& ops, std::size_t length) : ops_(ops), length_(length) {}

  std::size_t size() const { return rows_.size(); }

  /// Reduces v against the basis. If v is in the span returns its coordinates
  /// with respect to the inserted vectors (length size()) and true; otherwise
  /// inserts v and returns false.
  bool insert_or_express(const std::vector<T>& v, std::vector<T>& coords) {
    std::vector<T> w = v;
    std::vector<T> expr(rows_.size() + 1, ops_.zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T f = w[pivots_[i]];
      if (ops_.is_zero(f)) continue;
      ops_.axpy_neg(w.data(), rows_[i].data(), f, pivots_[i], length_);
      // w = v - sum f_i r_i, with r_i = sum expr_i[s] v_s
      for (std::size_t s = 0; s < exprs_[i].size(); ++s)
        if (!ops_.is_zero(exprs_[i][s])) expr[s] = ops_.sub(expr[s], ops_.mul(f, exprs_[i][s]));
    }
    std::size_t lead = length_;
    for (std::size_t k = 0; k < length_; ++k)
      if (!ops_.is_zero(w[k])) {
        lead = k;
        break;
      }
    if (lead == length_) {
      // 0 = v + sum expr[s] v_s  =>  v = -sum expr[s] v_s
      coords.assign(rows_.size(), ops_.zero());
      for (std::size_t s = 0; s < rows_.size(); ++s) coords[s] = ops_.neg(expr[s]);
      return true;
    }
    expr[rows_.size()] = ops_.one();
    const T inv = ops_.inv(w[lead]);
    ops_.scale(w.data(), inv, lead, length_);
    for (auto& e : expr) e = ops_.mul(e, inv);
    rows_.push_back(std::move(w));
    pivots_.push_back(lead);
    exprs_.push_back(std::move(expr));
    return false;
  }

  /// Coordinates of an arbitrary vector assumed to lie in the span.
  std::vector<T> express(const std::vector<T>& v) const {
    std::vector<T> w = v;
    std::vector<T> coords(rows_.size(), ops_.zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T f = w[pivots_[i]];
      if (ops_.is_zero(f)) continue;
      ops_.axpy_neg(w.data(), rows_[i].data(), f, pivots_[i], length_);
      for (std::size_t s = 0; s < exprs_[i].size(); ++s)
        if (!ops_.is_zero(exprs_[i][s])) coords[s] = ops_.add(coords[s], ops_.mul(f, exprs_[i][s]));
    }
    for (const auto& x : w)
      if (!ops_.is_zero(x)) throw InternalError("vector outside tracked span");
    return coords;
  }

 private:
  Ops ops_;
  std::size_t length_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<T>> exprs_;
};

/// Basis of the space of matrices X (dx x du) with X A_g = B_g X for every g,
/// where A_g (du x du) and B_g (dx x dx) are the source and target actions of
/// the algebra generators.
///
/// The source is spun up from standard basis vectors under the generators;
/// X is determined by the images of the seeds, and every linear relation met
/// while spinning becomes a constraint on those images.
template <class Ops>
std::vector<std::vector<typename Ops::T>> solve_intertwiners(const Ops& ops,
                                                             const std::vector<const std::vector<typename Ops::T>*>& src,
                                                             const std::vector<const std::vector<typename Ops::T>*>& tgt,
                                                             std::size_t du, std::size_t dx) {
  using T = typename Ops::T;
  const std::size_t ng = src.size();
  if (du == 0 || dx == 0) return {};

  // Spin the source.
  struct Node {
    std::size_t parent;  // index of parent node, or npos for a seed
    std::size_t gen;     // generator applied to the parent, or seed number
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  EchelonTracker<Ops> tracker(ops, du);
  std::vector<std::vector<T>> vecs;
  std::vector<Node> nodes;
  struct Relation {
    std::size_t node;
    std::size_t gen;
    std::vector<T> coords;  // A_gen v_node = sum coords[s] v_s
  };
  std::vector<Relation> relations;
  std::size_t seeds = 0;
  std::vector<T> coords;
  std::size_t next_unit = 0;
  std::size_t processed = 0;
  while (tracker.size() < du) {
    if (processed == nodes.size()) {
      // Add the first standard basis vector outside the span as a new seed.
      for (; next_unit < du; ++next_unit) {
        std::vector<T> e(du, ops.zero());
        e[next_unit] = ops.one();
        if (!tracker.insert_or_express(e, coords)) {
          vecs.push_back(std::move(e));
          nodes.push_back({npos, seeds++});
          ++next_unit;
          break;
        }
      }
    }
    for (; processed < nodes.size() && tracker.size() < du; ++processed) {
      for (std::size_t g = 0; g < ng; ++g) {
        std::vector<T> w(du, ops.zero());
        multiply(ops, src[g]->data(), vecs[processed].data(), w.data(), du, du, 1);
        if (tracker.insert_or_express(w, coords)) {
          relations.push_back({processed, g, coords});
        } else {
          vecs.push_back(std::move(w));
          nodes.push_back({processed, g});
        }
      }
    }
  }
  // Remaining nodes still have relations to record (their images are in the span).
  for (; processed < nodes.size(); ++processed) {
    for (std::size_t g = 0; g < ng; ++g) {
      std::vector<T> w(du, ops.zero());
      multiply(ops, src[g]->data(), vecs[processed].data(), w.data(), du, du, 1);
      std::vector<T> c = tracker.express(w);
      relations.push_back({processed, g, std::move(c)});
    }
  }

  // Images Y_t = X v_t as dx x K matrices acting on the unknown seed images.
  const std::size_t K = seeds * dx;
  std::vector<std::vector<T>> images(nodes.size());
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    if (nodes[t].parent == npos) {
      std::vector<T> y(dx * K, ops.zero());
      for (std::size_t r = 0; r < dx; ++r) y[r * K + nodes[t].gen * dx + r] = ops.one();
      images[t] = std::move(y);
    } else {
      images[t].assign(dx * K, ops.zero());
      multiply(ops, tgt[nodes[t].gen]->data(), images[nodes[t].parent].data(), images[t].data(), dx, dx, K);
    }
  }

  // Constraint rows: B_g Y_t - sum c_s Y_s = 0.
  std::vector<T> system;
  std::size_t rows = 0;
  std::vector<T> block(dx * K, ops.zero());
  for (const auto& rel : relations) {
    multiply(ops, tgt[rel.gen]->data(), images[rel.node].data(), block.data(), dx, dx, K);
    for (std::size_t s = 0; s < rel.coords.size(); ++s) {
      if (ops.is_zero(rel.coords[s])) continue;
      for (std::size_t k = 0; k < dx * K; ++k)
        if (!ops.is_zero(images[s][k])) block[k] = ops.sub(block[k], ops.mul(rel.coords[s], images[s][k]));
    }
    system.insert(system.end(), block.begin(), block.end());
    rows += dx;
    // Keep the system compact: reduce once it grows well past K rows.
    if (rows >= 4 * K + dx) {
      auto piv = rref(ops, system, rows, K, K);
      system.resize(piv.size() * K, ops.zero());
      rows = piv.size();
    }
  }
  auto piv = rref(ops, system, rows, K, K);
  auto kernel = nullspace_from_rref(ops, system, K, piv);

  // X = [Y_0 z | ... | Y_{du-1} z] * inverse of the node-basis matrix; rather
  // than inverting, express each standard basis vector in node coordinates.
  std::vector<std::vector<T>> unit_coords(du);
  for (std::size_t j = 0; j < du; ++j) {
    std::vector<T> e(du, ops.zero());
    e[j] = ops.one();
    unit_coords[j] = tracker.express(e);
  }
  std::vector<std::vector<T>> result;
  result.reserve(kernel.size());
  for (const auto& z : kernel) {
    std::vector<T> cols_img(nodes.size() * dx, ops.zero());  // node images y_t
    for (std::size_t t = 0; t < nodes.size(); ++t)
      multiply(ops, images[t].data(), z.data(), &cols_img[t * dx], dx, K, 1);
    std::vector<T> x(dx * du, ops.zero());
    for (std::size_t j = 0; j < du; ++j)
      for (std::size_t t = 0; t < nodes.size(); ++t) {
        const T& c = unit_coords[j][t];
        if (ops.is_zero(c)) continue;
        for (std::size_t r = 0; r < dx; ++r)
          x[r * du + j] = ops.add(x[r * du + j], ops.mul(c, cols_img[t * dx + r]));
      }
    result.push_back(std::move(x));
  }

  // Canonical basis: rref of the flattened solutions.
  if (result.empty()) return result;
  std::vector<T> flat;
  flat.reserve(result.size() * dx * du);
  for (const auto& x : result) flat.insert(flat.end(), x.begin(), x.end());
  const std::size_t len = dx * du;
  auto pv = rref(ops, flat, result.size(), len, len);
  std::vector<std::vector<T>> canonical;
  for (std::size_t i = 0; i < pv.size(); ++i)
    canonical.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i * len),
                           flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * len));
  return canonical;
}

}  // namespace modtrace::detail

#endif  // MODTRACE_SRC_KERNELS_HPP
