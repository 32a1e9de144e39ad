#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codequiv {

// An element of F_{p^h}, stored as the base-p integer whose digits are the
// coefficients of 1, e, ..., e^{h-1}. Zero is 0 and one is 1.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct FieldOptions {
  // Monic modulus, coefficients from the constant term upward (h + 1 entries).
  // Empty selects the built-in table.
  std::vector<Elem> modulus;
  std::uint64_t max_order = std::uint64_t{1} << 16;
};

/// Exact arithmetic in F_q, q = p^h, with a fixed primitive modulus whose
/// root e generates the multiplicative group.
///
/// The default modulus is the least primitive polynomial in Conway's order
/// (x^h - a1 x^{h-1} + a2 x^{h-2} - ..., lexicographic in a1, a2, ...). For
/// F_9 this is x^2 - x - 1, so e^2 = e + 1. For prime fields the modulus is
/// x - g with g the least primitive root, hence e = g.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(std::uint32_t p, std::uint32_t h, const FieldOptions& options = {});

  std::uint32_t p() const { return p_; }
  std::uint32_t h() const { return h_; }
  std::uint32_t q() const { return q_; }
  const std::vector<Elem>& modulus() const { return modulus_; }
  Elem primitive() const { return exp_[1 % (q_ - 1)]; }

  // F_p with integer representation 0..p-1; this field itself when h == 1.
  FieldPtr prime_field() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem div(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t n) const;
  // x^{p^i}; i is reduced mod h.
  Elem frobenius(Elem x, std::uint32_t i) const;

  // e^k for any k (reduced mod q - 1) and its inverse on nonzero elements.
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  std::uint32_t log(Elem x) const;

  Elem digit(Elem x, std::uint32_t i) const;
  std::vector<Elem> digits(Elem x) const;
  Elem from_digits(std::span<const Elem> digits) const;

  bool contains(Elem x) const { return x < q_; }
  bool same_as(const Field& other) const;

  // "0", "1", "e", "e^k".
  std::string format(Elem x) const;
  // Accepts the formats above, the coefficient vector "[a0,...,a_{h-1}]" and,
  // over a prime field, plain integers below p.
  // Throws ParseError (line 0) on anything else.
  Elem parse(std::string_view token) const;

  // 0, 1, e, e^2, ..., e^{q-2}. Symbol tables in witness files use this order.
  const std::vector<Elem>& canonical_order() const { return canonical_; }

 private:
  Field(std::uint32_t p, std::uint32_t h, std::vector<Elem> modulus);

  std::uint32_t p_;
  std::uint32_t h_;
  std::uint32_t q_;
  std::vector<Elem> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
  std::vector<std::uint64_t> frob_mult_;
  std::vector<Elem> canonical_;
  FieldPtr prime_;
};

bool is_prime(std::uint64_t n);

// Whether the monic polynomial (constant term first) is irreducible over F_p.
bool is_irreducible(std::uint32_t p, std::span<const Elem> monic);

// Throws FieldError unless both fields describe the same F_q.
void require_same_field(const Field& a, const Field& b);

/// Field-bound element value with checked operators.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);

  static FieldElement zero(FieldPtr field) { return {std::move(field), 0}; }
  static FieldElement one(FieldPtr field) { return {std::move(field), 1}; }
  static FieldElement primitive(FieldPtr field);
  static FieldElement parse(FieldPtr field, std::string_view token);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  std::vector<Elem> coefficients() const { return field_->digits(value_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t n) const { return {field_, field_->pow(value_, n)}; }
  FieldElement frobenius(std::uint32_t i) const { return {field_, field_->frobenius(value_, i)}; }

  bool operator==(const FieldElement& o) const;
  bool is_zero() const { return value_ == 0; }
  std::string to_string() const { return field_->format(value_); }

 private:
  FieldPtr field_;
  Elem value_;
};

}  // namespace codequiv
