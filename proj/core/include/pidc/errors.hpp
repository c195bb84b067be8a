#pragma once

#include <stdexcept>
#include <string>

namespace pidc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is degenerate for the operation (both-zero gcd, empty sequence, zero to factor).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The trace criterion fails, so the commutator equation has no solution.
class CriterionViolation : public Error {
 public:
  using Error::Error;
};

/// A matrix that was supposed to lie in the centraliser of X is not a polynomial in X.
class NotInCentralizer : public Error {
 public:
  using Error::Error;
};

/// A similarity witness failed its own consistency checks.
class WitnessInvalid : public Error {
 public:
  using Error::Error;
};

/// The Krylov matrix of the supplied vector is not invertible over the ring.
class NotCertified : public Error {
 public:
  using Error::Error;
};

/// The zero-diagonal hypothesis fails; `prime()` names the offending prime.
class NotApplicable : public Error {
 public:
  NotApplicable(const std::string& what, std::string prime)
      : Error(what), prime_(std::move(prime)) {}
  const std::string& prime() const noexcept { return prime_; }

 private:
  std::string prime_;
};

/// An internal invariant guaranteed by the underlying theory did not hold.
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its hard budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace pidc
