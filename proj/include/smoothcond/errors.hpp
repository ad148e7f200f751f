#pragma once

#include <stdexcept>
#include <string>

namespace smoothcond {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain (negative dimension, sigma > 1, ...).
struct DomainError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Input lies (numerically) on the ill-posed set, e.g. pseudo-inverse of a
/// rank-deficient matrix.
struct IllPosedError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

/// mu_norm_at_zero called at a point that is not a zero of the system.
struct NotAZeroError : Error {
  using Error::Error;
};

/// Operation not available for this problem family or configuration.
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace smoothcond
