// errors.hpp
//
// Exception hierarchy shared by every rslab module. The CLI maps these onto
// exit codes: DomainError -> 2 (bad input), CapacityError -> 3, anything
// reported as a ContractViolation -> 1.

#pragma once

#include <stdexcept>
#include <string>

namespace rslab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition on the mathematical input failed (non-prime conductor,
// gcd(a, m) != 1, mismatched ranks, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a table limit or a supported maximum.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Local data requested at a place where the representation is ramified.
class RamifiedPlaceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Ramified prime in a cyclic field of composite degree.
class UnsupportedCaseError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Evaluation too close to a pole of a local factor.
class NumericalSingularityError : public Error {
 public:
  using Error::Error;
};

// Dirichlet series evaluated outside its half-plane of absolute convergence.
class ConvergenceDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Degenerate input to a least-squares fit.
class FitError : public Error {
 public:
  using Error::Error;
};

// A computed identity or bound failed its tolerance.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rslab
