#include "modtrace/linalg.hpp"

#include "kernels.hpp"
#include "modtrace/errors.hpp"

namespace modtrace {

using detail::FpOps;
using detail::ScalarOps;

namespace {

template <class Ops>
LinearSolution solve_impl(const Ops& ops, const Matrix& a, const Matrix& b) {
  using T = typename Ops::T;
  const std::size_t n = a.rows(), m = a.cols(), k = b.cols();
  const std::size_t w = m + k;
  std::vector<T> aug(n * w, ops.zero());
  const auto& av = detail::storage<Ops>(a);
  const auto& bv = detail::storage<Ops>(b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug[i * w + j] = av[i * m + j];
    for (std::size_t j = 0; j < k; ++j) aug[i * w + m + j] = bv[i * k + j];
  }
  auto piv = detail::rref(ops, aug, n, w, m);
  bool consistent = true;
  for (std::size_t i = piv.size(); i < n && consistent; ++i)
    for (std::size_t j = m; j < w; ++j)
      if (!ops.is_zero(aug[i * w + j])) {
        consistent = false;
        break;
      }
  LinearSolution sol{std::nullopt, Matrix(a.field(), m, 0)};
  if (consistent) {
    Matrix x(a.field(), m, k);
    auto& xv = detail::storage<Ops>(x);
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) xv[piv[i] * k + j] = aug[i * w + m + j];
    sol.particular = std::move(x);
  }
  // Nullspace of the coefficient part only.
  std::vector<T> coef(piv.size() * m, ops.zero());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) coef[i * m + j] = aug[i * w + j];
  auto basis = detail::nullspace_from_rref(ops, coef, m, piv);
  Matrix ker(a.field(), m, basis.size());
  auto& kv = detail::storage<Ops>(ker);
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < m; ++r) kv[r * basis.size() + c] = basis[c][r];
  sol.kernel = std::move(ker);
  return sol;
}

template <class Ops>
Matrix rref_impl(const Ops& ops, const Matrix& m, std::vector<std::size_t>* pivots) {
  Matrix r = m;
  auto piv = detail::rref(ops, detail::storage<Ops>(r), m.rows(), m.cols(), m.cols());
  if (pivots) *pivots = std::move(piv);
  return r;
}

// Upper Hessenberg reduction followed by the standard recurrence.
template <class Ops>
std::vector<typename Ops::T> charpoly_impl(const Ops& ops, std::vector<typename Ops::T> h, std::size_t n) {
  using T = typename Ops::T;
  auto at = [&](std::size_t i, std::size_t j) -> T& { return h[i * n + j]; };
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (!ops.is_zero(at(i, j))) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(piv, c), at(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(at(r, piv), at(r, j + 1));
    }
    const T inv = ops.inv(at(j + 1, j));
    for (std::size_t i = j + 2; i < n; ++i) {
      if (ops.is_zero(at(i, j))) continue;
      const T u = ops.mul(at(i, j), inv);
      for (std::size_t c = 0; c < n; ++c) at(i, c) = ops.sub(at(i, c), ops.mul(u, at(j + 1, c)));
      for (std::size_t r = 0; r < n; ++r) at(r, j + 1) = ops.add(at(r, j + 1), ops.mul(u, at(r, i)));
    }
  }
  // p_0 = 1; p_m = (t - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{k=i+1..m} h_{k,k-1}) p_{i-1}, 1-based.
  std::vector<std::vector<T>> p(n + 1);
  p[0] = {ops.one()};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<T> next(m + 1, ops.zero());
    const auto& prev = p[m - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = ops.add(next[d + 1], prev[d]);
      next[d] = ops.sub(next[d], ops.mul(at(m - 1, m - 1), prev[d]));
    }
    T prod = ops.one();
    for (std::size_t i = m - 1; i >= 1; --i) {
      prod = ops.mul(prod, at(i, i - 1));
      if (ops.is_zero(prod)) break;
      const T coef = ops.mul(at(i - 1, m - 1), prod);
      if (!ops.is_zero(coef)) {
        const auto& q = p[i - 1];
        for (std::size_t d = 0; d < q.size(); ++d) next[d] = ops.sub(next[d], ops.mul(coef, q[d]));
      }
    }
    p[m] = std::move(next);
  }
  return p[n];
}

template <class Ops>
Polynomial to_polynomial(const Ops& ops, const FieldSpec& field, const std::vector<typename Ops::T>& c) {
  (void)ops;
  Vec coeffs;
  coeffs.reserve(c.size());
  for (const auto& x : c) {
    if constexpr (std::is_same_v<Ops, FpOps>)
      coeffs.push_back(Scalar::residue(x, field.p()));
    else
      coeffs.push_back(x);
  }
  return Polynomial(field, std::move(coeffs));
}

}  // namespace

LinearSolution solve_linear(const Matrix& system, const Matrix& rhs) {
  if (system.field() != rhs.field()) throw FieldMismatch("solve_linear across fields");
  if (system.rows() != rhs.rows()) throw DimensionMismatch("solve_linear: rhs row count differs from system");
  if (system.is_prime()) return solve_impl(FpOps{system.field().p()}, system, rhs);
  return solve_impl(ScalarOps(system.field()), system, rhs);
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
  if (m.is_prime()) return rref_impl(FpOps{m.field().p()}, m, pivots);
  return rref_impl(ScalarOps(m.field()), m, pivots);
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

Matrix nullspace(const Matrix& m) { return solve_linear(m, Matrix(m.field(), m.rows(), 0)).kernel; }

Matrix row_space_basis(const Matrix& m) {
  std::vector<std::size_t> piv;
  Matrix r = rref(m, &piv);
  return r.block(0, 0, piv.size(), m.cols());
}

std::optional<Matrix> invert(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  auto sol = solve_linear(m, Matrix::identity(m.field(), m.rows()));
  if (!sol.consistent() || sol.kernel.cols() != 0) return std::nullopt;
  return sol.particular;
}

Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  if (m.is_prime()) {
    FpOps ops{m.field().p()};
    return to_polynomial(ops, m.field(), charpoly_impl(ops, m.residues(), m.rows()));
  }
  ScalarOps ops(m.field());
  return to_polynomial(ops, m.field(), charpoly_impl(ops, m.scalars(), m.rows()));
}

Polynomial minimal_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("minimal polynomial of a non-square matrix");
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  // lcm of the local minimal polynomials of the standard basis vectors, each
  // found from the first linear dependency in its Krylov sequence.
  Polynomial result = Polynomial::constant(f.one());
  for (std::size_t j = 0; j < n; ++j) {
    if (result.evaluate(m).col(j).is_zero()) continue;
    std::vector<Matrix> krylov{Matrix(f, n, 1)};
    krylov[0].set(j, 0, f.one());
    for (;;) {
      Matrix next = m * krylov.back();
      Matrix span = hstack(krylov);
      auto sol = solve_linear(span, next);
      if (sol.consistent()) {
        // next = sum c_i K_i  =>  t^d - sum c_i t^i annihilates e_j
        Vec coeffs(krylov.size() + 1, f.zero());
        coeffs[krylov.size()] = f.one();
        for (std::size_t i = 0; i < krylov.size(); ++i) coeffs[i] = -sol.particular->at(i, 0);
        Polynomial local(f, std::move(coeffs));
        result = (result * local) / gcd(result, local);
        result = result.monic();
        break;
      }
      krylov.push_back(std::move(next));
    }
  }
  return result;
}

std::pair<Polynomial, Polynomial> char_min_poly(const Matrix& m) {
  return {characteristic_polynomial(m), minimal_polynomial(m)};
}

bool is_nilpotent(const Matrix& m) {
  Polynomial c = characteristic_polynomial(m);
  return c == Polynomial::monomial(m.field(), m.rows());
}

}  // namespace modtrace
