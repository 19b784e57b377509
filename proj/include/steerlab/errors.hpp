#pragma once

#include <stdexcept>
#include <string>

namespace steerlab {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad call arguments: out-of-range strengths, dimension mismatches, t < 0.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Iterative routine failed to converge.
class NumericFailureError : public Error {
 public:
  using Error::Error;
};

// Matrix has an eigenvalue below the PSD floor.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

// Density matrix has a nonzero entry outside the X pattern.
class NotXStateError : public Error {
 public:
  using Error::Error;
};

// Reservoir parameters outside the supported regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Post-selected operation has (numerically) zero success probability.
class DegenerateOutcomeError : public Error {
 public:
  using Error::Error;
};

// Closed-form denominator vanished.
class SingularConfigurationError : public Error {
 public:
  using Error::Error;
};

// Approximate optimal-reversal formula is outside its domain of validity.
class ApproximationDomainError : public Error {
 public:
  using Error::Error;
};

// State parameters violate physicality bounds beyond tolerance.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace steerlab
