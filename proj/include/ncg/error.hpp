#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

enum class ErrorKind {
  kInvalidInput,
  kDimensionMismatch,
  kInvariantViolation,
  kUnsupported,
};

/// Error raised by every ncg operation on bad input or broken invariants.
class NcgError : public std::runtime_error {
 public:
  NcgError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ncg
