#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace codequiv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad field parameters, division by zero, or operands from different fields.
class FieldError : public Error {
 public:
  using Error::Error;
};

// Malformed code or witness text. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Shape, rank and length violations on matrices, words and codes.
class CodeError : public Error {
 public:
  using Error::Error;
};

// An enumeration or search ran past its configured limit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A symbol map that was required to be additive is not:
// sigma(x + y) != sigma(x) + sigma(y) for the stored pair.
class AdditivityFailure : public Error {
 public:
  AdditivityFailure(std::uint32_t x, std::uint32_t y, const std::string& what)
      : Error(what), x_(x), y_(y) {}
  std::uint32_t x() const { return x_; }
  std::uint32_t y() const { return y_; }

 private:
  std::uint32_t x_;
  std::uint32_t y_;
};

// The supplied witness does not map one code onto the other.
class WitnessError : public Error {
 public:
  using Error::Error;
};

// Normalization to additive maps needs at least one generator column of
// weight two or more; every column had weight one.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class ExtractionError : public Error {
 public:
  enum class Kind {
    kInvalidWitness,
    // Two direct summands of the code need different Frobenius exponents.
    kInconsistentAutomorphism,
    // An identity that must hold for every valid witness failed.
    kInternal,
  };
  ExtractionError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace codequiv
