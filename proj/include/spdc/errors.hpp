#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

// Base class for runtime numerical failures (as opposed to contract
// violations, which throw std::domain_error / std::invalid_argument).
// Carries a single diagnostic figure whose meaning depends on the subclass.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& msg, double diagnostic)
      : std::runtime_error(msg), diagnostic_(diagnostic) {}
  double diagnostic() const { return diagnostic_; }

 private:
  double diagnostic_;
};

// Adaptive quadrature exhausted its refinement budget. diagnostic() is the
// achieved absolute error estimate.
class QuadratureError : public NumericError {
 public:
  using NumericError::NumericError;
};

// An alternating sum cancelled beyond what extended precision can certify.
// diagnostic() is the cancellation condition number (sum|t|)/|sum t|.
class CancellationError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A spiral spectrum failed to capture its mass within the maximum
// normalization window. diagnostic() is the estimated relative tail mass.
class SpectrumError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace spdc
