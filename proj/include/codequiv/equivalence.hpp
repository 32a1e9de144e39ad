#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "codequiv/code_core.hpp"
#include "codequiv/finite_field.hpp"
#include "codequiv/linearized.hpp"

namespace codequiv {

// Coordinate convention shared by every witness: coordinate j of a word of
// the source code moves to position alpha[j], and the symbol map stored for
// position i of the target acts on whatever lands there:
//   image[alpha[j]] = sigma_{alpha[j]}(u[j]).

/// Arbitrary symbol permutations; sigmas[i] is a table indexed by element value.
struct GeneralWitness {
  std::vector<std::size_t> alpha;
  std::vector<std::vector<Elem>> sigmas;
};

/// sigma_i(x) = lambdas[i] * x^{p^t}. t == 0 is a monomial (linear) map.
struct SemiLinearWitness {
  std::vector<std::size_t> alpha;
  std::vector<Elem> lambdas;
  std::uint32_t t = 0;
};

/// sigma_i is the invertible linearized map maps[i].
struct AdditiveWitness {
  std::vector<std::size_t> alpha;
  std::vector<LinearizedMap> maps;
};

/// (sigma_1(0), ..., sigma_n(0)) in target positions.
struct TranslationVector {
  Word v;
};

/// Generator columns of weight one, in aligned standard form: row_of[r] is the
/// row holding the nonzero entry of column r and thetas[r] the symbol map seen
/// through that row, x -> beta^{-1} sigma_r(alpha x). Coordinates sharing a row
/// carry the same theta.
struct WeightOneProfile {
  std::vector<std::size_t> row_of;
  std::vector<std::size_t> multiplicities;
  std::vector<std::vector<Elem>> thetas;
};

GeneralWitness identity_witness(const Field& field, std::size_t n);
GeneralWitness to_general(const Field& field, const SemiLinearWitness& w);
GeneralWitness to_general(const AdditiveWitness& w);
// sigma_i -> sigma_i + c_i.
GeneralWitness compose_translation(const Field& field, GeneralWitness w, std::span<const Elem> c);

// Throws WitnessError when alpha is not a permutation, a table has the wrong
// size, or a symbol map is not a bijection (or a lambda is zero).
void validate_witness(const Field& field, const GeneralWitness& w, std::size_t n);
void validate_witness(const Field& field, const SemiLinearWitness& w, std::size_t n);
void validate_witness(const AdditiveWitness& w, std::size_t n);

Word apply_witness(const Field& field, const GeneralWitness& w, std::span<const Elem> u);
Word apply_witness(const Field& field, const SemiLinearWitness& w, std::span<const Elem> u);
Word apply_witness(const AdditiveWitness& w, std::span<const Elem> u);

// Enumerates `a` and checks that the image is exactly `b`. Malformed witnesses
// are reported as false; length or field mismatches throw CodeError/FieldError.
bool is_equivalence(const GeneralWitness& w, const Code& a, const Code& b,
                    std::uint64_t budget = kDefaultEnumerationBudget);
bool is_equivalence(const SemiLinearWitness& w, const Code& a, const Code& b,
                    std::uint64_t budget = kDefaultEnumerationBudget);
bool is_equivalence(const AdditiveWitness& w, const Code& a, const Code& b,
                    std::uint64_t budget = kDefaultEnumerationBudget);

// d(u, v) == d(psi(u), psi(v)) over all codeword pairs of `a`.
bool preserves_distance(const GeneralWitness& w, const Code& a,
                        std::uint64_t budget = kDefaultEnumerationBudget);

TranslationVector translation_component(const GeneralWitness& w);
// Also checks membership in the target code; throws WitnessError if absent.
TranslationVector translation_component(const GeneralWitness& w, const Code& b);

// The image code of `a` under a semi-linear witness.
LinearCode apply_to_code(const LinearCode& a, const SemiLinearWitness& w);

/// Strips the translation part of a witness between linear codes:
/// tau_j = sigma_j - sigma_j(0), each certified additive.
///
/// Throws HypothesisViolation when every column of the aligned standard-form
/// generators has weight one, AdditivityFailure if some tau_j is not additive
/// (possible only for invalid witnesses or codes with a repetition summand),
/// ExtractionError(kInvalidWitness) when one of the identities every valid
/// witness satisfies fails.
AdditiveWitness normalize_to_additive(const GeneralWitness& w, const LinearCode& a,
                                      const LinearCode& b);

struct SemiLinearExtraction {
  enum class Branch { kWeightOne, kAdditive };

  SemiLinearWitness witness;
  Branch branch = Branch::kAdditive;
  // Common coordinate order used to put both codes in standard form: aligned
  // position m is position reordering[m] of the target.
  std::vector<std::size_t> reordering;
  std::optional<WeightOneProfile> profile;
};

/// Turns a general equivalence between linear codes into a semi-linear one.
///
/// Both generators are brought to standard form on a common information set.
/// If all columns have weight one the codes are repetition codes and the
/// monomial map is read off the column scalars. Otherwise the translation is
/// stripped, each tau_j is read as sum_i c_{ji} x^{p^i}, t is the least
/// exponent with a nonzero coefficient, and columns and rows of the target are
/// rescaled until it equals the source raised to p^t; the scalars used are the
/// lambdas. Summands of the code reached only through weight-one columns are
/// treated as repetition codes.
///
/// Throws ExtractionError (kInvalidWitness for inputs that are not valid
/// equivalences, kInconsistentAutomorphism when independent summands of the
/// code need different exponents) or AdditivityFailure.
SemiLinearExtraction extract_semilinear(const GeneralWitness& w, const LinearCode& a,
                                        const LinearCode& b);

enum class SearchStatus { kFound, kNotFound, kBudgetExceeded };

template <class Witness>
struct SearchResult {
  SearchStatus status = SearchStatus::kNotFound;
  std::optional<Witness> witness;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

// Backtracking over coordinate matchings and symbol permutations, using the
// weight distribution and per-coordinate weight profiles as invariants. Any
// witness returned has passed is_equivalence. kNotFound is only reported after
// an exhaustive search.
SearchResult<GeneralWitness> search_general(const LinearCode& a, const LinearCode& b,
                                            std::uint64_t budget = kDefaultSearchBudget);

// For each t, matches an ordered information set of a^{p^t} against the
// standard-form information set of b with every scaling, then pairs the
// remaining columns by their projective points. Exhaustive and complete.
// With linear_only only t = 0 is tried.
SearchResult<SemiLinearWitness> search_semilinear(const LinearCode& a, const LinearCode& b,
                                                  std::uint64_t budget = kDefaultSearchBudget,
                                                  bool linear_only = false);

}  // namespace codequiv
