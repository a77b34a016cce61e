#pragma once

#include <stdexcept>
#include <string>

namespace hilltongue {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input validation (bad spec, mismatched orders, malformed config).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class OrderMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedParity : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Exact-arithmetic failures.
class ResonantRHS : public Error {
 public:
  using Error::Error;
};

class CoefficientOverflow : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Floating-point oracle failures. All map to CLI exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NoTurningPoint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureNonConvergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegratorFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketNotFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AmbiguousBracket : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hilltongue
