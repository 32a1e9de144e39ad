#pragma once

#include <cstdint>
#include <vector>

#include "codequiv/code_core.hpp"

namespace codequiv::detail {

// signature[c][w]: number of codewords of weight w that are nonzero at c.
// Equivalences carry coordinate c to a coordinate with the same signature.
std::vector<std::vector<std::uint64_t>> coordinate_signatures(const Code& code);

// Weight distributions and sorted signatures agree.
bool invariants_match(const std::vector<std::vector<std::uint64_t>>& sig_a,
                      const std::vector<std::vector<std::uint64_t>>& sig_b, const Code& a,
                      const Code& b);

}  // namespace codequiv::detail
