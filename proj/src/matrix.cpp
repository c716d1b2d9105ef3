#include "modtrace/matrix.hpp"

#include <sstream>

#include "kernels.hpp"
#include "modtrace/errors.hpp"

namespace modtrace {

using detail::FpOps;
using detail::ScalarOps;

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (field_.is_prime())
    fp_.assign(rows * cols, 0);
  else
    gen_.assign(rows * cols, field_.zero());
}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
  Matrix m(field, n, n);
  Scalar one = field.one();
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, one);
  return m;
}

Matrix Matrix::from_rows(const FieldSpec& field, const std::vector<Vec>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged rows in matrix literal");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_ints(const FieldSpec& field, std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  Matrix m(field, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged rows in matrix literal");
    std::size_t j = 0;
    for (long long v : row) m.set(i, j++, field.from_int(v));
    ++i;
  }
  return m;
}

Matrix Matrix::column(const FieldSpec& field, const Vec& entries) {
  Matrix m(field, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, entries[i]);
  return m;
}

Matrix Matrix::random(const FieldSpec& field, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(field, rows, cols);
  if (field.is_prime()) {
    for (auto& x : m.fp_) x = static_cast<std::uint32_t>(rng() % field.p());
  } else {
    for (auto& x : m.gen_) x = random_scalar(field, rng);
  }
  return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
  if (field_.is_prime()) return Scalar::residue(fp_[r * cols_ + c], field_.p());
  return gen_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& value) {
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
  if (value.field() != field_) throw FieldMismatch("entry over " + value.field().to_string() + " in matrix over " +
                                                   field_.to_string());
  if (field_.is_prime())
    fp_[r * cols_ + c] = value.residue_value();
  else
    gen_[r * cols_ + c] = value;
}

void Matrix::add_at(std::size_t r, std::size_t c, const Scalar& value) { set(r, c, at(r, c) + value); }

bool Matrix::is_zero() const {
  if (field_.is_prime()) {
    for (auto x : fp_)
      if (x != 0) return false;
    return true;
  }
  for (const auto& x : gen_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_prime()) {
        if (fp_[i * cols_ + j] != (i == j ? 1u : 0u)) return false;
      } else {
        const Scalar& x = gen_[i * cols_ + j];
        if (i == j ? !x.is_one() : !x.is_zero()) return false;
      }
    }
  return true;
}

Scalar Matrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
  Scalar t = field_.zero();
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_prime())
        t.fp_[j * rows_ + i] = fp_[i * cols_ + j];
      else
        t.gen_[j * rows_ + i] = gen_[i * cols_ + j];
    }
  return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_) throw DimensionMismatch("block out of range");
  Matrix b(field_, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (field_.is_prime())
        b.fp_[i * cols + j] = fp_[(row0 + i) * cols_ + col0 + j];
      else
        b.gen_[i * cols + j] = gen_[(row0 + i) * cols_ + col0 + j];
    }
  return b;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& columns) const {
  Matrix b(field_, rows_, columns.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] >= cols_) throw DimensionMismatch("column index out of range");
      if (field_.is_prime())
        b.fp_[i * columns.size() + j] = fp_[i * cols_ + columns[j]];
      else
        b.gen_[i * columns.size() + j] = gen_[i * cols_ + columns[j]];
    }
  return b;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
  Matrix b(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw DimensionMismatch("row index out of range");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_prime())
        b.fp_[i * cols_ + j] = fp_[rows[i] * cols_ + j];
      else
        b.gen_[i * cols_ + j] = gen_[rows[i] * cols_ + j];
    }
  }
  return b;
}

Matrix Matrix::vectorize() const { return reshape(rows_ * cols_, 1); }

Matrix Matrix::reshape(std::size_t rows, std::size_t cols) const {
  if (rows * cols != rows_ * cols_) throw DimensionMismatch("reshape changes the entry count");
  Matrix m = *this;
  m.rows_ = rows;
  m.cols_ = cols;
  return m;
}

void Matrix::check_compatible(const Matrix& other, const char* what) const {
  if (field_ != other.field_)
    throw FieldMismatch(std::string(what) + ": " + field_.to_string() + " vs " + other.field_.to_string());
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  check_compatible(rhs, "matrix addition");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix addition shape mismatch");
  if (field_.is_prime()) {
    FpOps ops{field_.p()};
    for (std::size_t k = 0; k < fp_.size(); ++k) fp_[k] = ops.add(fp_[k], rhs.fp_[k]);
  } else {
    for (std::size_t k = 0; k < gen_.size(); ++k) gen_[k] += rhs.gen_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  check_compatible(rhs, "matrix subtraction");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix subtraction shape mismatch");
  if (field_.is_prime()) {
    FpOps ops{field_.p()};
    for (std::size_t k = 0; k < fp_.size(); ++k) fp_[k] = ops.sub(fp_[k], rhs.fp_[k]);
  } else {
    for (std::size_t k = 0; k < gen_.size(); ++k) gen_[k] -= rhs.gen_[k];
  }
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  if (s.field() != field_) throw FieldMismatch("scalar and matrix over different fields");
  if (field_.is_prime()) {
    FpOps ops{field_.p()};
    const std::uint32_t f = s.residue_value();
    for (auto& x : fp_) x = ops.mul(x, f);
  } else {
    for (auto& x : gen_)
      if (!x.is_zero()) x *= s;
  }
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  if (field_.is_prime()) {
    FpOps ops{field_.p()};
    for (auto& x : m.fp_) x = ops.neg(x);
  } else {
    for (auto& x : m.gen_) x = -x;
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  a.check_compatible(b, "matrix product");
  if (a.cols_ != b.rows_)
    throw DimensionMismatch("matrix product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " by " +
                            std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  Matrix c(a.field_, a.rows_, b.cols_);
  if (a.field_.is_prime())
    detail::multiply(FpOps{a.field_.p()}, a.fp_.data(), b.fp_.data(), c.fp_.data(), a.rows_, a.cols_, b.cols_);
  else
    detail::multiply(ScalarOps(a.field_), a.gen_.data(), b.gen_.data(), c.gen_.data(), a.rows_, a.cols_, b.cols_);
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.fp_ == b.fp_ && a.gen_ == b.gen_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw FieldMismatch("Kronecker product across fields");
  const std::size_t ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  Matrix k(a.field(), ar * br, ac * bc);
  if (a.is_prime()) {
    FpOps ops{a.field().p()};
    const auto& x = a.residues();
    const auto& y = b.residues();
    auto& z = k.residues();
    for (std::size_t i = 0; i < ar; ++i)
      for (std::size_t j = 0; j < ac; ++j) {
        const std::uint32_t s = x[i * ac + j];
        if (s == 0) continue;
        for (std::size_t u = 0; u < br; ++u)
          for (std::size_t v = 0; v < bc; ++v) z[(i * br + u) * (ac * bc) + j * bc + v] = ops.mul(s, y[u * bc + v]);
      }
  } else {
    const auto& x = a.scalars();
    const auto& y = b.scalars();
    auto& z = k.scalars();
    for (std::size_t i = 0; i < ar; ++i)
      for (std::size_t j = 0; j < ac; ++j) {
        const Scalar& s = x[i * ac + j];
        if (s.is_zero()) continue;
        for (std::size_t u = 0; u < br; ++u)
          for (std::size_t v = 0; v < bc; ++v) z[(i * br + u) * (ac * bc) + j * bc + v] = s * y[u * bc + v];
      }
  }
  return k;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw DimensionMismatch("hstack of nothing");
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw DimensionMismatch("hstack row mismatch");
    if (b.field() != blocks[0].field()) throw FieldMismatch("hstack across fields");
    cols += b.cols();
  }
  Matrix m(blocks[0].field(), blocks[0].rows(), cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (m.is_prime())
          m.residues()[i * cols + off + j] = b.residues()[i * b.cols() + j];
        else
          m.scalars()[i * cols + off + j] = b.scalars()[i * b.cols() + j];
      }
    off += b.cols();
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw DimensionMismatch("vstack of nothing");
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw DimensionMismatch("vstack column mismatch");
    if (b.field() != blocks[0].field()) throw FieldMismatch("vstack across fields");
    rows += b.rows();
  }
  Matrix m(blocks[0].field(), rows, blocks[0].cols());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    const std::size_t n = b.rows() * b.cols();
    const std::size_t base = off * b.cols();
    if (m.is_prime())
      std::copy(b.residues().begin(), b.residues().begin() + static_cast<std::ptrdiff_t>(n),
                m.residues().begin() + static_cast<std::ptrdiff_t>(base));
    else
      std::copy(b.scalars().begin(), b.scalars().begin() + static_cast<std::ptrdiff_t>(n),
                m.scalars().begin() + static_cast<std::ptrdiff_t>(base));
    off += b.rows();
  }
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.set(a.rows() + i, a.cols() + j, b.at(i, j));
  return m;
}

namespace {

template <class Ops>
void apply_tensor_impl(const Ops& ops, const std::vector<Matrix>& factors, std::vector<typename Ops::T>& data,
                       std::vector<std::size_t> shape, std::size_t width) {
  using T = typename Ops::T;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Matrix& f = factors[i];
    if (f.is_identity()) continue;
    std::size_t left = 1, right = width;
    for (std::size_t j = 0; j < i; ++j) left *= shape[j];
    for (std::size_t j = i + 1; j < shape.size(); ++j) right *= shape[j];
    const std::size_t in = shape[i], out = f.rows();
    const auto& fm = detail::storage<Ops>(f);
    std::vector<T> next(left * out * right, ops.zero());
    std::vector<T> tmp(out * right, ops.zero());
    for (std::size_t l = 0; l < left; ++l) {
      detail::multiply(ops, fm.data(), &data[l * in * right], tmp.data(), out, in, right);
      std::copy(tmp.begin(), tmp.end(), next.begin() + static_cast<std::ptrdiff_t>(l * out * right));
    }
    data = std::move(next);
    shape[i] = out;
  }
}

}  // namespace

Matrix apply_tensor(const std::vector<Matrix>& factors, const Matrix& x) {
  std::size_t in = 1, out = 1;
  std::vector<std::size_t> shape;
  for (const auto& f : factors) {
    if (f.field() != x.field()) throw FieldMismatch("apply_tensor across fields");
    in *= f.cols();
    out *= f.rows();
    shape.push_back(f.cols());
  }
  if (in != x.rows()) throw DimensionMismatch("apply_tensor: factor columns do not match input rows");
  Matrix result(x.field(), out, x.cols());
  if (x.is_prime()) {
    auto data = x.residues();
    apply_tensor_impl(FpOps{x.field().p()}, factors, data, shape, x.cols());
    result.residues() = std::move(data);
  } else {
    auto data = x.scalars();
    apply_tensor_impl(ScalarOps(x.field()), factors, data, shape, x.cols());
    result.scalars() = std::move(data);
  }
  return result;
}

}  // namespace modtrace
