#pragma once

#include <stdexcept>
#include <string>

namespace stringci {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverting a series whose constant term is not a unit.
class NonInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Operands of a multivariate operation live in rings of different shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A characteristic series was supplied to fewer y-orders than required.
class InsufficientOrderError : public Error {
 public:
  using Error::Error;
};

/// Exponent vector outside the stored range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed complete-intersection data (zero rows, ragged rows, ...).
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but violates an operation's precondition
/// (wrong dimension, non-string data where string data is required, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Numeric quadrature could not be trusted (contour encloses extra poles,
/// or refinement changed the result).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace stringci
