#pragma once

#include <stdexcept>
#include <string>

namespace qkr {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter-regime violation (temperature guard, unsupported branch, ...).
struct RegimeError : Error {
  using Error::Error;
};

// Operation not defined for the given damping model (distributional kernel,
// divergent series for strict Ohmic damping, ...).
struct UnsupportedError : Error {
  using Error::Error;
};

// Numerical failure: non-convergence, consistency-check violation.
struct NumericalError : Error {
  using Error::Error;
};

// Denominator or product factor too close to a pole / caustic.
struct PoleError : NumericalError {
  using NumericalError::NumericalError;
};

// Evaluation outside the mathematical domain of an operation.
struct DomainError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace qkr
