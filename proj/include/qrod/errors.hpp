#pragma once

#include <stdexcept>
#include <string>

namespace qrod {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad physical or solver parameter supplied by the caller.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where a quantity is defined (|theta| > pi/2, E > B, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Not enough levels were supplied or solved for the requested table.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues drift between nested grids by more than the tolerance.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A semiclassical formula was asked for outside the regime it covers.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Quadrature, root bracketing or an eigensolver failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Time step too large: norm drifted beyond the stability threshold.
class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Eigenbasis too small to represent a state.
class InsufficientBasis : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qrod
