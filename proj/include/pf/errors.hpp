#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pf {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary op on operands whose arities / generator counts disagree.
struct ArityMismatch : Error {
  using Error::Error;
};

// Ring op on polynomials living in different variable contexts.
struct ContextMismatch : Error {
  using Error::Error;
};

// A search or recursion hit its configured resource cap.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Input data violates a documented hypothesis (seed not a zero of f, etc.).
struct HypothesisViolation : Error {
  using Error::Error;
};

// Malformed value outside a function's domain (zero polynomial, bad index...).
struct DomainError : Error {
  using Error::Error;
};

// f does not depend on the distinguished generator.
struct NotDependent : Error {
  using Error::Error;
};

// Seed search exhausted its budget without a rational point.
struct NoRationalSeed : Error {
  using Error::Error;
};

// Parse failure, with the byte offset of the offending token.
struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Wraps an error thrown by one stage of a multi-stage pipeline.
struct StageError : Error {
  std::string stage;
  StageError(std::string stage_name, const std::string& msg)
      : Error(stage_name + ": " + msg), stage(std::move(stage_name)) {}
};

}  // namespace pf
