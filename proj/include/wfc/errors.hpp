#pragma once

#include <stdexcept>
#include <string>

namespace wfc {

// Input violates an operation's precondition (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Work or memory would exceed the configured budget (CLI exit code 3).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact count no longer fits its integer type.
class OverflowError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace wfc
