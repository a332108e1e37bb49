#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dssp/field.hpp"
#include "dssp/kernels.hpp"

namespace dssp {

/// Dense row-major matrix over one prime field. Entries are stored as
/// canonical raw values so the kernels can run on flat arrays.
class Matrix {
 public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols);
  Matrix(PrimeField field, std::size_t rows, std::size_t cols,
         std::vector<std::uint32_t> entries);

  static Matrix identity(PrimeField field, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  std::uint32_t at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::uint32_t& at(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  Fp fp(std::size_t r, std::size_t c) const {
    return Fp{at(r, c), field_.modulus()};
  }

  std::span<const std::uint32_t> data() const { return entries_; }
  std::vector<std::uint32_t> row(std::size_t r) const;

  Matrix mul(const Matrix& other) const;
  std::vector<std::uint32_t> mul_vec(std::span<const std::uint32_t> x) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> entries_;
};

/// Solve M X = rhs for square nonsingular M; throws SingularMatrix with
/// the rank found otherwise.
Matrix gauss_solve(const Matrix& m, const Matrix& rhs);

Matrix invert(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Determinant as a field element; row-swap parity is folded into the
/// pivot product.
std::uint32_t det(const Matrix& m);

/// Rows are the given points, columns are powers 1..cols (no constant
/// column). Points must be distinct and nonzero.
Matrix vandermonde(const PrimeField& field,
                   std::span<const std::uint32_t> points, std::size_t cols);

}  // namespace dssp
