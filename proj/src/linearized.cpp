#include "codequiv/linearized.hpp"

#include <string>

#include "codequiv/errors.hpp"

namespace codequiv {

LinearizedMap::LinearizedMap(FieldPtr field, std::vector<Elem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != field_->h()) {
    throw CodeError("linearized map needs exactly " + std::to_string(field_->h()) + " coefficients");
  }
  for (Elem c : coeffs_) {
    if (!field_->contains(c)) throw FieldError("coefficient outside the field");
  }
}

LinearizedMap LinearizedMap::identity(FieldPtr field) { return scaling(std::move(field), 1); }

LinearizedMap LinearizedMap::scaling(FieldPtr field, Elem c) {
  std::vector<Elem> coeffs(field->h(), 0);
  coeffs[0] = c;
  return {std::move(field), std::move(coeffs)};
}

std::optional<std::pair<Elem, Elem>> additivity_violation(const Field& f,
                                                          std::span<const Elem> table) {
  if (table.size() != f.q()) throw CodeError("function table must list every field element");
  if (table[0] != 0) return std::pair<Elem, Elem>{0, 0};
  // x = x' + p^i with i the lowest nonzero digit of x and x' < x. If every
  // such split is additive, the table agrees with the F_p-linear map fixed by
  // the basis images, so it is additive.
  for (Elem x = 1; x < f.q(); ++x) {
    Elem unit = 1;
    Elem rest = x;
    while (rest % f.p() == 0) {
      rest /= f.p();
      unit *= f.p();
    }
    const Elem smaller = x - unit;
    if (table[x] != f.add(table[smaller], table[unit])) return std::pair<Elem, Elem>{smaller, unit};
  }
  return std::nullopt;
}

LinearizedMap LinearizedMap::from_table(FieldPtr field, std::span<const Elem> table) {
  const Field& f = *field;
  if (const auto bad = additivity_violation(f, table)) {
    throw AdditivityFailure(bad->first, bad->second,
                            "map is not additive at (" + f.format(bad->first) + ", " +
                                f.format(bad->second) + ")");
  }
  // Solve sum_i c_i b^{p^i} = table[b] over the power basis b = 1, e, ..., e^{h-1}.
  const std::uint32_t h = f.h();
  Matrix moore(field, h, h);
  std::vector<Elem> target(h);
  Elem basis = 1;
  for (std::uint32_t m = 0; m < h; ++m) {
    for (std::uint32_t i = 0; i < h; ++i) moore(i, m) = f.frobenius(basis, i);
    target[m] = table[basis];
    basis *= f.p();
  }
  const auto coeffs = solve_left(moore, target);
  if (!coeffs) throw FieldError("singular Moore matrix");
  LinearizedMap out(std::move(field), *coeffs);
  for (Elem x = 0; x < f.q(); ++x) {
    if (out(x) != table[x]) throw FieldError("interpolated map disagrees with its table");
  }
  return out;
}

LinearizedMap LinearizedMap::from_matrix(FieldPtr field, const Matrix& m) {
  const Field& f = *field;
  if (m.rows() != f.h() || m.cols() != f.h() || m.field()->h() != 1 || m.field()->p() != f.p()) {
    throw CodeError("expected an " + std::to_string(f.h()) + "x" + std::to_string(f.h()) +
                    " matrix over F_" + std::to_string(f.p()));
  }
  std::vector<Elem> table(f.q());
  for (Elem x = 0; x < f.q(); ++x) table[x] = f.from_digits(m.left_multiply(f.digits(x)));
  return from_table(std::move(field), table);
}

Elem LinearizedMap::operator()(Elem x) const {
  const Field& f = *field_;
  Elem acc = 0;
  for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) acc = f.add(acc, f.mul(coeffs_[i], f.frobenius(x, i)));
  }
  return acc;
}

std::vector<Elem> LinearizedMap::table() const {
  std::vector<Elem> out(field_->q());
  for (Elem x = 0; x < field_->q(); ++x) out[x] = (*this)(x);
  return out;
}

Matrix LinearizedMap::matrix() const {
  const Field& f = *field_;
  Matrix m(f.prime_field(), f.h(), f.h());
  Elem basis = 1;
  for (std::uint32_t i = 0; i < f.h(); ++i) {
    const auto d = f.digits((*this)(basis));
    for (std::uint32_t j = 0; j < f.h(); ++j) m(i, j) = d[j];
    basis *= f.p();
  }
  return m;
}

bool LinearizedMap::is_permutation() const { return rank(matrix()) == field_->h(); }

LinearizedMap LinearizedMap::compose(const LinearizedMap& inner) const {
  require_same_field(*field_, *inner.field_);
  const Field& f = *field_;
  const std::uint32_t h = f.h();
  // (sum_i a_i y^{p^i}) o (sum_j b_j x^{p^j}) = sum_{i,j} a_i b_j^{p^i} x^{p^{i+j}}.
  std::vector<Elem> out(h, 0);
  for (std::uint32_t i = 0; i < h; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::uint32_t j = 0; j < h; ++j) {
      const Elem term = f.mul(coeffs_[i], f.frobenius(inner.coeffs_[j], i));
      out[(i + j) % h] = f.add(out[(i + j) % h], term);
    }
  }
  return {field_, std::move(out)};
}

std::optional<LinearizedMap> LinearizedMap::inverse() const {
  const auto inv = codequiv::inverse(matrix());
  if (!inv) return std::nullopt;
  return from_matrix(field_, *inv);
}

std::vector<LinearizedMap> all_linearized_maps(const FieldPtr& field) {
  const Field& f = *field;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < f.h(); ++i) {
    count *= f.q();
    if (count > (std::uint64_t{1} << 24)) throw BudgetExceeded("too many additive maps to list");
  }
  std::vector<LinearizedMap> out;
  out.reserve(count);
  std::vector<Elem> coeffs(f.h(), 0);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < f.h(); ++i) {
      coeffs[i] = static_cast<Elem>(c % f.q());
      c /= f.q();
    }
    out.emplace_back(field, coeffs);
  }
  return out;
}

std::vector<LinearizedMap> additive_permutations(const FieldPtr& field) {
  std::vector<LinearizedMap> out;
  for (auto& m : all_linearized_maps(field)) {
    if (m.is_permutation()) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace codequiv
