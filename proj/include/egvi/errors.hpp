#pragma once

#include <stdexcept>
#include <string>

namespace egvi {

// Base class for every error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  DimensionError(const std::string& field, long expected, long actual);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class InfeasiblePointError : public Error {
 public:
  InfeasiblePointError(const std::string& what, double infeasibility);
  double infeasibility() const { return infeasibility_; }

 private:
  double infeasibility_;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double residual, long iterations);
  double residual() const { return residual_; }
  long iterations() const { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

class UnsupportedSetError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DegenerateFrameError : public Error {
 public:
  using Error::Error;
};

// A reduced-frame inequality that should hold did not.
class PropertyViolationError : public Error {
 public:
  PropertyViolationError(const std::string& property, double slack);
  const std::string& property() const { return property_; }
  double slack() const { return slack_; }

 private:
  std::string property_;
  double slack_;
};

class UnknownMeasureError : public Error {
 public:
  using Error::Error;
};

}  // namespace egvi
