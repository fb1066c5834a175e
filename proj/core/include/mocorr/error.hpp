#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mocorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input violated a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (non-finite value, divergence, non-convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A non-finite integrand value at a quadrature node.
class EvaluationError : public NumericalError {
 public:
  EvaluationError(const std::string& what, double x, double y)
      : NumericalError(what), x_(x), y_(y) {}
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_;
  double y_;
};

/// Power iteration hit max_iter; carries the last iterate.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double value, double residual,
                   std::vector<double> iterate)
      : NumericalError(what),
        value_(value),
        residual_(residual),
        iterate_(std::move(iterate)) {}
  double value() const noexcept { return value_; }
  double residual() const noexcept { return residual_; }
  const std::vector<double>& iterate() const noexcept { return iterate_; }

 private:
  double value_;
  double residual_;
  std::vector<double> iterate_;
};

/// A functional whose moments do not exist under the requested law.
class DivergentMomentError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mocorr
