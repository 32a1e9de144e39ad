#pragma once

// Random witnesses and codewords for roundtrip checks.

#include <random>
#include <vector>

#include "codequiv/additive_codes.hpp"
#include "codequiv/code_core.hpp"
#include "codequiv/equivalence.hpp"
#include "codequiv/finite_field.hpp"

namespace codequiv {

using Rng = std::mt19937_64;

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);
Elem random_element(const Field& field, Rng& rng);
Elem random_nonzero(const Field& field, Rng& rng);

SemiLinearWitness random_semilinear_witness(const Field& field, std::size_t n, std::uint32_t t,
                                            Rng& rng);
AdditiveWitness random_additive_witness(const FieldPtr& field, std::size_t n, Rng& rng);

// Uniform over the code, drawn from random F_p combinations of a basis.
Word random_codeword(const LinearCode& code, Rng& rng);
Word random_codeword(const AdditiveCode& code, Rng& rng);

// Random full-rank k x n matrix.
Matrix random_generator(const FieldPtr& field, std::size_t k, std::size_t n, Rng& rng);

}  // namespace codequiv
