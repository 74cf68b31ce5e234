#pragma once

#include <stdexcept>
#include <string>

namespace chshdyn {

/// Invalid parameters or configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure during evaluation or integration. Maps to CLI exit code 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The adaptive integrator could not advance; `tau_reached` is the last accepted time.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double tau_reached)
      : NumericalError(what), tau_reached_(tau_reached) {}
  double tau_reached() const noexcept { return tau_reached_; }

 private:
  double tau_reached_;
};

}  // namespace chshdyn
