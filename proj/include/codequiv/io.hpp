#pragma once

// Line-oriented text formats for codes and witnesses. '#' starts a comment;
// blank lines are ignored. Errors are ParseError with the 1-based line.
//
//   field p=3 h=2
//   kind linear k=3 n=8                      k rows of n element tokens
//   kind additive k=3 h-rows=6 n=8           6 rows of n element tokens
//   kind additive k=3 h-rows=6 n=8 expanded=true
//                                            6 rows of n*h integers mod p
//
//   witness kind=general n=8                 alpha: i_1 ... i_n   (1-based)
//                                            sigma<i>: q images of 0, 1, e, ...
//   witness kind=semilinear n=8              alpha:, t=<t>, lambda: n tokens
//   witness kind=additive n=8                alpha:, c<i>: h coefficients

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "codequiv/additive_codes.hpp"
#include "codequiv/code_core.hpp"
#include "codequiv/equivalence.hpp"
#include "codequiv/finite_field.hpp"

namespace codequiv {

using AnyCode = std::variant<LinearCode, AdditiveCode>;
using AnyWitness = std::variant<GeneralWitness, SemiLinearWitness, AdditiveWitness>;

AnyCode read_code(std::istream& in);
AnyCode read_code_file(const std::string& path);

const Code& as_code(const AnyCode& code);
// Linear codes are viewed through AdditiveCode::from_linear.
AdditiveCode as_additive(const AnyCode& code);

std::string format_code(const LinearCode& code);
std::string format_code(const AdditiveCode& code, bool expanded = false);

// The witness must be over `field`; a header carrying p= and h= is checked
// against it.
AnyWitness read_witness(std::istream& in, const FieldPtr& field);
AnyWitness read_witness_file(const std::string& path, const FieldPtr& field);

// `comments` are written as '#' lines after the header.
std::string format_witness(const Field& field, const AnyWitness& w,
                           const std::vector<std::string>& comments = {});

}  // namespace codequiv
