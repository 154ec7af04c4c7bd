#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace splitfix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  DimensionError(const std::string& what, std::size_t expected, std::size_t actual)
      : Error(what + ": dimension mismatch (" + std::to_string(expected) + " vs " +
              std::to_string(actual) + ")"),
        expected_(expected), actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

private:
  std::size_t expected_;
  std::size_t actual_;
};

/// A point was handed to a map outside the set the map is defined on.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A step parameter or weight violates its admissible range. The message
/// names the parameter and the bound.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// An iterate or intermediate quantity became NaN/Inf.
class DivergenceError : public Error {
public:
  using Error::Error;
};

inline void require_same_dim(const char* what, std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionError(what, expected, actual);
}

}  // namespace splitfix
