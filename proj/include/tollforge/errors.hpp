#pragma once

#include <stdexcept>
#include <string>

namespace tollforge {

// Numerical breakdown inside the simplex solver or a bisection that lost its
// bracket.  Carries a human-readable reason.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (bad sizes, wrong shape, value out
// of the supported domain).  Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotMonotone : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class HypothesisViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Overflow : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LengthMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The efficiency LP is unbounded below 0, i.e. the mechanism admits games with
// arbitrarily poor equilibria.
class UnboundedPoa : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateNu : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class IrrationalDual : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NoFiniteGamma : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoFixedPoint : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NegativityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tollforge
