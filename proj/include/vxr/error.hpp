#pragma once

#include <stdexcept>
#include <string>

namespace vxr {

/// Invalid numeric or structural parameter (bad radius, malformed shape, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that violates an operation's precondition (empty set, no boundary).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Moving-planes sweep whose inclusion check fails at the first offset that
/// meets the set: the direction is degenerate for this input.
class ContactAtStart : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed input document; `byte` is the offset of the failure when known.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::size_t byte = 0)
      : std::runtime_error(what), byte_(byte) {}
  std::size_t byte() const noexcept { return byte_; }

 private:
  std::size_t byte_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result objects that disagree with the input they claim to describe.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vxr
