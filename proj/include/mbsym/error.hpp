#pragma once

#include <stdexcept>
#include <string>

namespace mbsym {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different variable sets.
class VarSetMismatch : public Error {
 public:
  using Error::Error;
};

/// A variable name not present in the relevant variable set.
class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// Evaluation point missing a binding for a variable the polynomial uses.
class UnboundVariable : public Error {
 public:
  using Error::Error;
};

/// Inhomogeneous linear system with no solution.
class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

/// Bad argument outside any more specific category.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during time stepping (Newton divergence, blow-up).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace mbsym
