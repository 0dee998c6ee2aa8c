#pragma once

#include <stdexcept>
#include <string>

namespace casimag {

/// Argument outside the mathematical domain of an operation (w <= 0, eps < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent input data (optical tables, configuration files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the partial estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value, double partial_error)
      : std::runtime_error(what), partial_value_(partial_value), partial_error_(partial_error) {}

  double partial_value() const { return partial_value_; }
  double partial_error() const { return partial_error_; }

 private:
  double partial_value_;
  double partial_error_;
};

}  // namespace casimag
