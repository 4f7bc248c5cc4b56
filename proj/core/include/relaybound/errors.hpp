#pragma once

#include <stdexcept>
#include <string>

namespace relaybound {

/// An argument lies outside the domain of the operation, or a stated
/// precondition does not hold.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The channel is doubly infinite and the ratio along which the limit is
/// taken was needed but not supplied.
class IndeterminateLimitError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The hypothesis of a statistical check failed, so the check makes no claim.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Root search was given an interval without a sign change.
class NoBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method exhausted its work budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relaybound
