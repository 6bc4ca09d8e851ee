#pragma once

#include <stdexcept>
#include <string>

namespace spb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A divergence or tilted quantity is infinite where a finite value is needed.
class InfiniteDivergenceError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// All log-likelihood ratios are a.s. constant, so a2 vanishes.
class DegenerateError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The requested rate lies outside the open interval where the parametric
/// order exists. Both endpoints are carried for reporting.
class RateOutOfRangeError : public PreconditionError {
 public:
  RateOutOfRangeError(double rate, double lower, double upper);

  double rate() const { return rate_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double rate_;
  double lower_;
  double upper_;
};

/// An exact enumeration would exceed its state budget.
class BudgetExceededError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An iterative solver ran out of budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Malformed or unreadable input documents.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace spb
