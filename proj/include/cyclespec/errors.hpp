#pragma once

#include <stdexcept>
#include <string>

namespace cyclespec {

/// Root of every failure raised by the library. The CLI maps subclasses to
/// exit codes (see exit_code()).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the natural domain of a function or solver.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Iteration cap exceeded.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// No sign change on the requested interval.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// An iterate left the interval the convergence theory confines it to.
class BracketViolation : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Inertia shift hit an eigenvalue (zero pivot) on every retry.
class SingularShift : public Error {
 public:
  using Error::Error;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// Stable process exit codes: 0 ok, 1 parse, 2 domain, 3 convergence, 4 verification.
inline int exit_code(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e) != nullptr) return 1;
  if (dynamic_cast<const DomainError*>(&e) != nullptr) return 2;
  if (dynamic_cast<const ConvergenceError*>(&e) != nullptr) return 3;
  if (dynamic_cast<const BracketError*>(&e) != nullptr) return 3;
  if (dynamic_cast<const SingularShift*>(&e) != nullptr) return 3;
  if (dynamic_cast<const VerificationFailure*>(&e) != nullptr) return 4;
  return 2;
}

}  // namespace cyclespec
