#pragma once

#include <stdexcept>
#include <string>

namespace cvbell {

// Base of every error the library throws. The CLI maps the concrete types
// onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input matrix is not finite or not exactly symmetric.
class MalformedMatrix : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (n < 1/2,
// T outside [0, 1], unphysical state where a physical one is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Covariance matrix is singular or not positive definite where an inverse
// or a square-root determinant is needed.
class SingularState : public Error {
 public:
  using Error::Error;
};

class InconsistentInvariants : public Error {
 public:
  using Error::Error;
};

// Operation defined only on the symmetric family n = m, c1 = -c2.
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

// Measurement settings do not determine all ten covariance entries.
class Underdetermined : public Error {
 public:
  using Error::Error;
};

// Caller precondition not met (non-pure ancestor, non-monotone bracket...).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cvbell
