#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace muntz {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument or configuration outside the documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A well-posed request that failed numerically.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(std::size_t pivot, double value)
      : NumericalError("matrix is not positive definite: pivot " + std::to_string(pivot) +
                       " is " + std::to_string(value)),
        pivot_(pivot) {}

  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// A Bessel evaluation or zero outside the series validity window.
class WindowExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace muntz
