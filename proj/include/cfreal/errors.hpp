#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfr {

/// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An expression divides by a value that is exactly zero.
class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error("division by zero: " + what) {}
};

/// A function argument lies (or cannot be shown to lie) outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A consumer pulled more stream elements than its cap allows without reaching
/// the requested precision.
class IterationCapExceeded : public Error {
 public:
  explicit IterationCapExceeded(std::size_t cap)
      : Error("cannot certify to requested precision within " + std::to_string(cap) +
              " iterations"),
        cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Raised when an internal consistency check fails (nested bounds that do not
/// intersect, for instance). Indicates a bug, not bad input.
class ValidityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cfr
