#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

/// Malformed or inconsistent user input (bad cycle notation, ν not allowed, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured budget (element cap, tuple budget, memory budget) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// The inputs are well formed but outside the configurations an operation
/// is defined for (e.g. classifying classes of a group that is not split-p-p).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// A self-check failed. Always a bug, never a property of the input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hurwitz
