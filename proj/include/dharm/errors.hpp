#pragma once

#include <stdexcept>
#include <string>

namespace dharm {

// Bad input: malformed specs, configs, graphs. CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rotation system does not describe a planar embedding.
class StructuralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DisconnectedGraphError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failure or tolerance violation. CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero denominators in the holomorphic data (dg = 0, c_a = 0, poles).
class SingularDataError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Per-star values of q disagree on a shared edge.
class InconsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateStarError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CalibrationError : public NumericalError {
 public:
  CalibrationError(const std::string& what, double c_re, double c_im, double residual)
      : NumericalError(what), c_re_(c_re), c_im_(c_im), residual_(residual) {}
  double c_re() const { return c_re_; }
  double c_im() const { return c_im_; }
  double residual() const { return residual_; }

 private:
  double c_re_, c_im_, residual_;
};

}  // namespace dharm
