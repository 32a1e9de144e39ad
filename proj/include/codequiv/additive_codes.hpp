#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "codequiv/code_core.hpp"
#include "codequiv/equivalence.hpp"
#include "codequiv/finite_field.hpp"
#include "codequiv/linalg.hpp"

namespace codequiv {

/// The F_p-span of the rows of a matrix over F_q. Rows may be dependent; the
/// size is p^rank. A code with kh independent rows has q^k words.
class AdditiveCode final : public Code {
 public:
  explicit AdditiveCode(Matrix generators);

  // Regroups an F_p matrix h columns at a time, digit i of a symbol being the
  // coefficient of e^i.
  static AdditiveCode from_expanded(const FieldPtr& field, const Matrix& expanded);
  // Rows e^i * g for every row g and i < h.
  static AdditiveCode from_linear(const LinearCode& code);

  const Matrix& generators() const { return generators_; }
  // Nominal dimension: number of generator rows over h.
  std::size_t k() const { return generators_.rows() / field()->h(); }
  // The rows x (n h) matrix over F_p.
  const Matrix& expanded() const { return expanded_; }

  const FieldPtr& field() const override { return generators_.field(); }
  std::size_t length() const override { return generators_.cols(); }
  std::size_t prime_dimension() const override { return pivots_.size(); }
  bool contains(std::span<const Elem> word) const override;
  void for_each_codeword(const std::function<void(std::span<const Elem>)>& visit,
                         std::uint64_t budget = kDefaultEnumerationBudget) const override;

 private:
  Matrix generators_;
  Matrix expanded_;
  Matrix reduced_;
  std::vector<std::size_t> pivots_;
};

// Row i, column c h + d holds digit d of generators(i, c).
Matrix expand_to_prime(const AdditiveCode& code);

/// Expanded generator (I_{kh} | blocks) after moving an information set of
/// whole coordinates to the front. The set is the first one in lexicographic
/// order; the code is only permuted, row operations over F_p do the rest.
struct AdditiveStandardForm {
  AdditiveCode code;
  // Expanded kh x nh matrix of `code`.
  Matrix expanded;
  // Position m of the form is coordinate permutation[m] of the input.
  std::vector<std::size_t> permutation;
  // Maps the input code onto `code`.
  AdditiveWitness witness;
  // Every block of a parity coordinate is non-singular, as for additive MDS codes.
  bool blocks_invertible = false;

  // The h x h block of message symbol i at coordinate c.
  Matrix block(std::size_t i, std::size_t c) const;
};

// Throws CodeError when the rows are dependent, their number is not a
// multiple of h, or no k coordinates carry the whole code.
AdditiveStandardForm additive_standard_form(const AdditiveCode& code);

// Singleton test with distance counted in F_q symbols.
bool is_additive_mds(const AdditiveCode& code, std::uint64_t budget = kDefaultEnumerationBudget);

// First generator row g with e * g outside the code, if any.
std::optional<std::size_t> fq_linearity_violation(const AdditiveCode& code);
bool is_fq_linear(const AdditiveCode& code);

AdditiveCode apply_to_code(const AdditiveCode& a, const AdditiveWitness& w);

/// Strips the translation part of a general witness between additive codes
/// and certifies every tau_j additive, acting on symbols through the h x h
/// blocks of the expanded standard forms. Same errors as
/// normalize_to_additive, plus CodeError if the source has no block standard
/// form. The result is checked by full enumeration.
AdditiveWitness extract_additive(const GeneralWitness& w, const AdditiveCode& a,
                                 const AdditiveCode& b);

// Backtracking over coordinate matchings and invertible additive maps. With an
// information set of whole coordinates the maps of the information set and
// of each matched column are tied by one block equation per row; otherwise
// coordinates are matched one at a time against projections of the codes.
SearchResult<AdditiveWitness> search_additive(const AdditiveCode& a, const AdditiveCode& b,
                                              std::uint64_t budget = kDefaultSearchBudget);

}  // namespace codequiv
