#pragma once

#include <stdexcept>
#include <string>

namespace nanonmr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or type invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& msg, double achieved_rel_tol)
      : Error(msg), achieved_rel_tol_(achieved_rel_tol) {}
  double achieved_rel_tol() const { return achieved_rel_tol_; }

 private:
  double achieved_rel_tol_;
};

/// Normal matrix singular: some parameter combination is unconstrained.
class FitDegeneracyError : public Error {
 public:
  FitDegeneracyError(const std::string& msg, std::string null_direction)
      : Error(msg), null_direction_(std::move(null_direction)) {}
  /// Human-readable null-space direction, e.g. "+0.71*a -0.71*b".
  const std::string& null_direction() const { return null_direction_; }

 private:
  std::string null_direction_;
};

/// Malformed input data (CSV parse failures carry a line number).
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg, long line = -1)
      : Error(msg), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Bad or incomplete run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A fit or iterative procedure exhausted its iteration budget.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nanonmr
