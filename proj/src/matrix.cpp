#include "dssp/matrix.hpp"

#include <string>

namespace dssp {

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols,
               std::vector<std::uint32_t> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw InvalidParameterError("matrix entry count does not match shape");
  }
  for (auto& v : entries_) v %= field_.modulus();
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % field.modulus();
  return m;
}

std::vector<std::uint32_t> Matrix::row(std::size_t r) const {
  return std::vector<std::uint32_t>(entries_.begin() + r * cols_,
                                    entries_.begin() + (r + 1) * cols_);
}

Matrix Matrix::mul(const Matrix& other) const {
  if (field_ != other.field_) throw FieldMismatchError("matrix product");
  if (cols_ != other.rows_) {
    throw InvalidParameterError("matrix product shape mismatch");
  }
  Matrix out(field_, rows_, other.cols_);
  kernels::mat_mul(field_, entries_, rows_, cols_, other.entries_,
                   other.cols_, out.entries_, execution_mode());
  return out;
}

std::vector<std::uint32_t> Matrix::mul_vec(
    std::span<const std::uint32_t> x) const {
  if (x.size() != cols_) {
    throw InvalidParameterError("matrix-vector shape mismatch");
  }
  std::vector<std::uint32_t> out(rows_);
  kernels::mat_vec(field_, entries_, rows_, cols_, x, out, execution_mode());
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

namespace {

// Augment [m | rhs], reduce, and return the right block.
Matrix solve_augmented(const Matrix& m, const Matrix& rhs,
                       const char* what) {
  if (m.rows() != m.cols()) {
    throw InvalidParameterError(std::string(what) + ": matrix must be square");
  }
  if (rhs.rows() != m.rows()) {
    throw InvalidParameterError(std::string(what) + ": rhs row mismatch");
  }
  if (m.field() != rhs.field()) throw FieldMismatchError(what);
  const std::size_t n = m.rows();
  const std::size_t rc = rhs.cols();
  const std::size_t cols = n + rc;
  std::vector<std::uint32_t> aug(n * cols, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r * cols + c] = m.at(r, c);
    for (std::size_t c = 0; c < rc; ++c) aug[r * cols + n + c] = rhs.at(r, c);
  }
  auto res = kernels::row_reduce(m.field(), aug, n, cols, n,
                                 execution_mode());
  if (res.rank < n) {
    throw SingularMatrixError(
        res.rank, std::string(what) + ": matrix is singular (rank " +
                      std::to_string(res.rank) + " of " + std::to_string(n) +
                      ")");
  }
  Matrix out(m.field(), n, rc);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < rc; ++c) out.at(r, c) = aug[r * cols + n + c];
  }
  return out;
}

}  // namespace

Matrix gauss_solve(const Matrix& m, const Matrix& rhs) {
  return solve_augmented(m, rhs, "gauss_solve");
}

Matrix invert(const Matrix& m) {
  return solve_augmented(m, Matrix::identity(m.field(), m.rows()), "invert");
}

std::size_t rank(const Matrix& m) {
  std::vector<std::uint32_t> a(m.data().begin(), m.data().end());
  return kernels::row_reduce(m.field(), a, m.rows(), m.cols(), m.cols(),
                             execution_mode())
      .rank;
}

std::uint32_t det(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidParameterError("det: matrix must be square");
  }
  std::vector<std::uint32_t> a(m.data().begin(), m.data().end());
  return kernels::row_reduce(m.field(), a, m.rows(), m.cols(), m.cols(),
                             execution_mode())
      .det;
}

Matrix vandermonde(const PrimeField& field,
                   std::span<const std::uint32_t> points, std::size_t cols) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] % field.modulus() == 0) {
      throw DuplicatePointError("vandermonde point " + std::to_string(i + 1) +
                                " is zero");
    }
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] % field.modulus() == points[j] % field.modulus()) {
        throw DuplicatePointError("vandermonde points " +
                                  std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " coincide");
      }
    }
  }
  Matrix out(field, points.size(), cols);
  for (std::size_t r = 0; r < points.size(); ++r) {
    std::uint32_t p = points[r] % field.modulus();
    std::uint32_t v = 1 % field.modulus();
    for (std::size_t c = 0; c < cols; ++c) {
      v = field.mul(v, p);
      out.at(r, c) = v;
    }
  }
  return out;
}

}  // namespace dssp
