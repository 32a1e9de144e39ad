#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "codequiv/finite_field.hpp"

namespace codequiv {

// Dense row-major matrix over a finite field. Matrices over the prime field
// (field->h() == 1) double as the F_p-linear view of F_q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> data);

  static Matrix identity(FieldPtr field, std::size_t n);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Elem> column(std::size_t c) const;
  const std::vector<Elem>& data() const { return data_; }

  // Column c of the result is column cols[c] of this matrix.
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix transpose() const;

  Matrix operator*(const Matrix& rhs) const;
  bool operator==(const Matrix& rhs) const;

  // Row vector times matrix.
  std::vector<Elem> left_multiply(std::span<const Elem> v) const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// Reduced row echelon form in place. Pivots are taken at the leftmost column
// that still offers one. Returns the pivot columns in row order; zero rows end
// up at the bottom.
std::vector<std::size_t> row_reduce(Matrix& m);

std::size_t rank(Matrix m);

std::optional<Matrix> inverse(const Matrix& m);

// Rows of the result form a basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m);

// Solves x * m = target for a row vector x; nullopt when no solution exists.
std::optional<std::vector<Elem>> solve_left(const Matrix& m, std::span<const Elem> target);

}  // namespace codequiv
