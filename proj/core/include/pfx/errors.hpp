#pragma once

#include <stdexcept>
#include <string>

namespace pfx {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument lies within the pole guard of a gamma pole (or of a k-grid
// such as x + k = 0 in a series denominator).
class PoleError : public Error {
 public:
  using Error::Error;
};

// Result magnitude exceeds the double-precision range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A factor of a negative-index Pochhammer product vanished.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Integer argument outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A root-vector construction has a vanishing denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// NaN or Inf seen at an API boundary.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Power-law fit of a term trace is not usable.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace pfx
