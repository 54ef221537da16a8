#pragma once

#include <stdexcept>
#include <string>

namespace filicoh {

/// Malformed input: bad JSON, arity or dimension mismatch, out-of-range data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cochain handed to an operation that needs a cocycle is not closed.
class NotACocycle : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A construction that should succeed by theory failed its own verification.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace filicoh
