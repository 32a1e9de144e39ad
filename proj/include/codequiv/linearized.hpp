#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "codequiv/finite_field.hpp"
#include "codequiv/linalg.hpp"

namespace codequiv {

/// An additive map of F_{p^h} written as x -> sum_i c_i x^{p^i}, i = 0..h-1.
///
/// Viewing F_q as F_p^h through the digit vector (coefficients of
/// 1, e, ..., e^{h-1}), the map acts on row vectors: digits(L(x)) =
/// digits(x) * matrix(). Composition of maps is therefore the matrix product
/// in reverse order: matrix(a.compose(b)) == b.matrix() * a.matrix().
class LinearizedMap {
 public:
  LinearizedMap(FieldPtr field, std::vector<Elem> coeffs);

  static LinearizedMap identity(FieldPtr field);
  // Multiplication by a fixed element: x -> c x.
  static LinearizedMap scaling(FieldPtr field, Elem c);
  // Interpolates a function table indexed by element value. Throws
  // AdditivityFailure carrying a pair (x, y) with t(x + y) != t(x) + t(y).
  static LinearizedMap from_table(FieldPtr field, std::span<const Elem> table);
  // Inverse of matrix(); throws CodeError on a wrong shape or field.
  static LinearizedMap from_matrix(FieldPtr field, const Matrix& m);

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }

  Elem operator()(Elem x) const;
  std::vector<Elem> table() const;
  Matrix matrix() const;
  bool is_permutation() const;

  // (*this)(inner(x)).
  LinearizedMap compose(const LinearizedMap& inner) const;
  std::optional<LinearizedMap> inverse() const;

  bool operator==(const LinearizedMap& o) const {
    return coeffs_ == o.coeffs_ && field_->same_as(*o.field_);
  }

 private:
  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

// First pair (x, y) violating additivity of the table, if any. Tables with
// t(0) != 0 report (0, 0). Runs in O(q).
std::optional<std::pair<Elem, Elem>> additivity_violation(const Field& field,
                                                          std::span<const Elem> table);

// All p^{h^2} additive maps, ordered by coefficient vector.
std::vector<LinearizedMap> all_linearized_maps(const FieldPtr& field);

// The invertible ones; |GL(h, p)| of them.
std::vector<LinearizedMap> additive_permutations(const FieldPtr& field);

}  // namespace codequiv
