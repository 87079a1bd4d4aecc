#pragma once

#include <stdexcept>
#include <string>

namespace critexp {

/// Raised when an operation's input contract is violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A profile or sample whose grid/values break the representation invariants.
class InvalidProfile : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed input file.
class ParseError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace critexp
