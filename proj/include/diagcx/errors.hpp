#pragma once

#include <stdexcept>
#include <string>

namespace dcx {

// Argument errors use std::invalid_argument directly.

/// Raised when an operation is called on data that violates its documented
/// precondition (e.g. an invalid labelling or a complex that fails validation).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for requests outside what the library evaluates (non-circle labels in
/// the torus model, Euler characteristics of infinite series, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation-size guard is exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcx
