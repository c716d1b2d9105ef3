#ifndef MODTRACE_LINALG_HPP
#define MODTRACE_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "modtrace/matrix.hpp"
#include "modtrace/polynomial.hpp"

namespace modtrace {

struct LinearSolution {
  /// One solution X of system * X = rhs, absent when inconsistent.
  std::optional<Matrix> particular;
  /// Basis of the nullspace of system, one vector per column.
  Matrix kernel;

  bool consistent() const noexcept { return particular.has_value(); }
};

/// Gaussian elimination with first-nonzero pivoting; free variables are set to zero
/// in the particular solution.
LinearSolution solve_linear(const Matrix& system, const Matrix& rhs);

/// Reduced row echelon form; pivot columns are written to pivots when given.
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);
/// Nullspace basis as columns (cols x k).
Matrix nullspace(const Matrix& m);
/// Nonzero rows of the rref: a canonical basis of the row space.
Matrix row_space_basis(const Matrix& m);

/// Inverse, or nullopt when singular.
std::optional<Matrix> invert(const Matrix& m);

Polynomial characteristic_polynomial(const Matrix& m);
Polynomial minimal_polynomial(const Matrix& m);
/// Characteristic and minimal polynomial.
std::pair<Polynomial, Polynomial> char_min_poly(const Matrix& m);

bool is_nilpotent(const Matrix& m);

}  // namespace modtrace

#endif  // MODTRACE_LINALG_HPP
