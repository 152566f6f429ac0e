#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace vlab {

/// Invalid user input: bad ids, out-of-range config fields, malformed flags.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  explicit ConfigError(const std::string& message) : ConfigError(std::string{}, message) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Thrown when an adaptive or truncated integral cannot meet its tolerance.
/// Carries the best value reached so callers can still report it.
class NonconvergenceError : public std::runtime_error {
 public:
  NonconvergenceError(const std::string& message, std::complex<double> best, double error_estimate)
      : std::runtime_error(message), best_(best), error_(error_estimate) {}

  std::complex<double> best_value() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  std::complex<double> best_;
  double error_;
};

/// Runtime failure while evaluating an expression (division by zero, log 0).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vlab
