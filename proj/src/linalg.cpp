#include "codequiv/linalg.hpp"

#include <utility>

#include "codequiv/errors.hpp"

namespace codequiv {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw CodeError("matrix data does not match its shape");
  for (Elem x : data_) {
    if (!field_->contains(x)) throw CodeError("matrix entry outside the field");
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Elem> Matrix::column(std::size_t c) const {
  std::vector<Elem> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(r, cols[c]);
  }
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(rows[r], c);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_field(*field_, *rhs.field_);
  if (cols_ != rhs.rows_) throw CodeError("matrix product shape mismatch");
  const Field& f = *field_;
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        out(r, c) = f.add(out(r, c), f.mul(a, rhs(k, c)));
      }
    }
  }
  return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_ &&
         field_->same_as(*rhs.field_);
}

std::vector<Elem> Matrix::left_multiply(std::span<const Elem> v) const {
  if (v.size() != rows_) throw CodeError("vector length does not match matrix rows");
  const Field& f = *field_;
  std::vector<Elem> out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      out[c] = f.add(out[c], f.mul(v[r], (*this)(r, c)));
    }
  }
  return out;
}

std::vector<std::size_t> row_reduce(Matrix& m) {
  const Field& f = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t sel = lead_row;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(lead_row, j));
    }
    const Elem scale = f.inv(m(lead_row, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(lead_row, j) = f.mul(m(lead_row, j), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      const Elem factor = m(r, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(lead_row, j)));
      }
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw CodeError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  }
  return out;
}

Matrix nullspace(const Matrix& m) {
  const Field& f = *m.field();
  Matrix reduced = m;
  const auto pivots = row_reduce(reduced);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  Matrix basis(m.field(), free_cols.size(), m.cols());
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    basis(i, free_cols[i]) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(i, pivots[r]) = f.neg(reduced(r, free_cols[i]));
    }
  }
  return basis;
}

std::optional<std::vector<Elem>> solve_left(const Matrix& m, std::span<const Elem> target) {
  if (target.size() != m.cols()) throw CodeError("target length does not match matrix columns");
  // x m = t  <=>  m^T x^T = t^T; reduce [m^T | t^T].
  Matrix aug(m.field(), m.cols(), m.rows() + 1);
  for (std::size_t r = 0; r < m.cols(); ++r) {
    for (std::size_t c = 0; c < m.rows(); ++c) aug(r, c) = m(c, r);
    aug(r, m.rows()) = target[r];
  }
  const auto pivots = row_reduce(aug);
  std::vector<Elem> x(m.rows(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.rows()) return std::nullopt;
    x[pivots[r]] = aug(r, m.rows());
  }
  return x;
}

}  // namespace codequiv
