#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ballkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (bad dimension, negative
/// radius, mismatched lengths, malformed input file).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The r-convex hull does not exist because cr(A) > r.
class HullUndefinedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Input is valid but degenerate for the requested quantity (cr(A) = 0).
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A geometric construction produced an inconsistent result.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate, double residual)
      : Error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

/// The Steiner least-squares fit produced an unusable answer.
class FitError : public Error {
 public:
  using Error::Error;
};

/// The Steiner least-squares system is too ill-conditioned to trust.
class FitConditioningError : public FitError {
 public:
  FitConditioningError(const std::string& what, double condition)
      : FitError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace ballkit
