#pragma once

#include <stdexcept>
#include <string>

namespace sdg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary operation on values living in different Weil algebras.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// Inverse requested for an element whose constant term is singular.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold in every valid model was found violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace sdg
