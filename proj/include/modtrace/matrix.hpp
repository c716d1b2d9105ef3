#ifndef MODTRACE_MATRIX_HPP
#define MODTRACE_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "modtrace/field.hpp"

namespace modtrace {

/// Dense row-major matrix over a FieldSpec.
///
/// Prime-field matrices keep raw residues; other fields keep Scalars. The two
/// storages are never mixed within one matrix.
class Matrix {
 public:
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldSpec& field, std::size_t n);
  static Matrix from_rows(const FieldSpec& field, const std::vector<Vec>& rows);
  static Matrix from_ints(const FieldSpec& field, std::initializer_list<std::initializer_list<long long>> rows);
  /// Column vector.
  static Matrix column(const FieldSpec& field, const Vec& entries);
  static Matrix random(const FieldSpec& field, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_prime() const noexcept { return field_.is_prime(); }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& value);
  /// Adds value to entry (r, c).
  void add_at(std::size_t r, std::size_t c, const Scalar& value);

  bool is_zero() const;
  bool is_identity() const;
  Scalar trace() const;

  Matrix transpose() const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
  Matrix col(std::size_t c) const { return block(0, c, rows_, 1); }
  /// Columns listed in the given order.
  Matrix select_columns(const std::vector<std::size_t>& columns) const;
  Matrix select_rows(const std::vector<std::size_t>& rows) const;
  /// Row-major flattening into a rows*cols x 1 column.
  Matrix vectorize() const;
  Matrix reshape(std::size_t rows, std::size_t cols) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix operator-() const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

  // Raw residue storage (prime fields only).
  std::vector<std::uint32_t>& residues() { return fp_; }
  const std::vector<std::uint32_t>& residues() const { return fp_; }
  // Scalar storage (non-prime fields only).
  std::vector<Scalar>& scalars() { return gen_; }
  const std::vector<Scalar>& scalars() const { return gen_; }

 private:
  void check_compatible(const Matrix& other, const char* what) const;

  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> fp_;
  std::vector<Scalar> gen_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& blocks);
Matrix vstack(const std::vector<Matrix>& blocks);
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Applies A_1 (x) ... (x) A_k to the columns of x without forming the Kronecker product.
/// x.rows() must equal the product of the factors' column counts; the result has
/// the product of their row counts as row count, same column count.
Matrix apply_tensor(const std::vector<Matrix>& factors, const Matrix& x);

}  // namespace modtrace

#endif  // MODTRACE_MATRIX_HPP
