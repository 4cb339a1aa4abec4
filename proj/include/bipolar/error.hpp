#pragma once

#include <stdexcept>
#include <string>

namespace bipolar {

// Precondition or domain violation of an operation (bad argument range,
// singular matrix where an inverse is required, malformed input data).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A stored object violates its type invariant (e.g. det(V - V^T) != 1).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or search exceeded its configured bound. `bound()` names it.
class BoundExceeded : public std::runtime_error {
 public:
  BoundExceeded(std::string bound, const std::string& what)
      : std::runtime_error(what), bound_(std::move(bound)) {}
  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string bound_;
};

}  // namespace bipolar
