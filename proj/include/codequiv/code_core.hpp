#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "codequiv/finite_field.hpp"
#include "codequiv/linalg.hpp"

namespace codequiv {

using Word = std::vector<Elem>;

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// k x n generator matrix of full row rank, 1 <= k <= n.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  const FieldPtr& field() const { return m_.field(); }
  std::size_t k() const { return m_.rows(); }
  std::size_t n() const { return m_.cols(); }
  Elem operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  Matrix m_;
};

/// A code of length n over F_q that is a group under addition. Codewords are
/// visited in a fixed order; membership is decided by linear algebra, not by
/// enumeration.
class Code {
 public:
  virtual ~Code() = default;

  virtual const FieldPtr& field() const = 0;
  virtual std::size_t length() const = 0;
  // log_q |C| * h, i.e. the F_p-dimension.
  virtual std::size_t prime_dimension() const = 0;
  virtual bool contains(std::span<const Elem> word) const = 0;
  // Throws BudgetExceeded if the code has more than `budget` words.
  virtual void for_each_codeword(const std::function<void(std::span<const Elem>)>& visit,
                                 std::uint64_t budget = kDefaultEnumerationBudget) const = 0;

  // Throws CodeError if |C| does not fit in 63 bits.
  std::uint64_t size() const;
  std::vector<Word> codewords(std::uint64_t budget = kDefaultEnumerationBudget) const;
};

class LinearCode final : public Code {
 public:
  explicit LinearCode(GeneratorMatrix generator);
  explicit LinearCode(Matrix generator) : LinearCode(GeneratorMatrix(std::move(generator))) {}

  const GeneratorMatrix& generator() const { return generator_; }
  std::size_t dimension() const { return generator_.k(); }

  const FieldPtr& field() const override { return generator_.field(); }
  std::size_t length() const override { return generator_.n(); }
  std::size_t prime_dimension() const override { return generator_.k() * field()->h(); }
  bool contains(std::span<const Elem> word) const override;
  void for_each_codeword(const std::function<void(std::span<const Elem>)>& visit,
                         std::uint64_t budget = kDefaultEnumerationBudget) const override;

  Word encode(std::span<const Elem> message) const;

 private:
  GeneratorMatrix generator_;
  Matrix reduced_;
  std::vector<std::size_t> pivots_;
};

struct StandardForm {
  // (I_k | M).
  Matrix matrix;
  // Column i of `matrix` comes from column permutation[i] of the input.
  std::vector<std::size_t> permutation;
};

// Row reduces and moves the pivot columns, in order, to the front. Other
// columns keep their relative order. Throws CodeError on rank deficiency.
StandardForm standard_form(const Matrix& g);

std::size_t hamming_weight(std::span<const Elem> u);
std::size_t hamming_distance(std::span<const Elem> u, std::span<const Elem> v);

// Minimum nonzero weight over all codewords (equal to the minimum pairwise
// distance for group codes).
std::size_t minimum_distance(const Code& code, std::uint64_t budget = kDefaultEnumerationBudget);

// Number of codewords of each weight 0..n.
std::vector<std::uint64_t> weight_distribution(const Code& code,
                                               std::uint64_t budget = kDefaultEnumerationBudget);

// Singleton equality |C| = alphabet^{n - d + 1}.
bool is_mds(std::uint64_t code_size, std::size_t n, std::size_t d, std::uint64_t alphabet);

struct MdsReport {
  bool mds;
  std::size_t d;
  std::uint64_t size;
};
MdsReport mds_report(const Code& code, std::uint64_t budget = kDefaultEnumerationBudget);

/// Quadratic form in x1, x2, x3 with monomials, in order,
/// x1^2, x2^2, x3^2, x1x2, x1x3, x2x3.
struct Conic {
  FieldPtr field;
  std::array<Elem, 6> coeffs{};

  Elem evaluate(std::span<const Elem> point) const;
  // Scaled so the first nonzero coefficient is 1.
  Conic normalized() const;
  bool proportional_to(const Conic& other) const;
  std::string to_string() const;
};

// Basis of the quadratic forms vanishing on every point (each of length 3).
std::vector<Conic> conic_space(const FieldPtr& field, std::span<const std::vector<Elem>> points);

// Columns of a 3 x n generator matrix as points.
std::vector<std::vector<Elem>> columns_as_points(const Matrix& g);

std::vector<std::size_t> column_weights(const Matrix& g);
bool all_columns_weight_one(const Matrix& a, const Matrix& b);

// Entrywise x -> x^{p^t}.
Matrix frobenius_matrix(const Matrix& g, std::uint32_t t);

// The code obtained by moving column j of the generator to position perm[j].
LinearCode permute_coordinates(const LinearCode& code, std::span<const std::size_t> perm);

// Whether perm is a permutation of {0, ..., n-1}.
bool is_permutation(std::span<const std::size_t> perm, std::size_t n);

}  // namespace codequiv
