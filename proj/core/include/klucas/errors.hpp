#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace klucas {

// A precondition on the inputs of an operation was violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An interval computation was too wide to certify the requested fact.
// Callers retry with more working precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// floor(C * eta) could not be pinned down at the current precision.
class FloorAmbiguityError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

// The reduction gate c1^2 >= T^2 + S failed; C has to grow.
class ConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured budget ran out. Partial progress has been journaled.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace klucas
