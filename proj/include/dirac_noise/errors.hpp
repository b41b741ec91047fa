#pragma once

#include <stdexcept>
#include <string>

namespace dirac_noise {

// Rejected input: wrong dimension, non-Hermitian matrix, invalid parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed-form path requested outside the configuration it was derived for.
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A trajectory sample broke a state or measure invariant.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string invariant, double t, const std::string& detail)
      : std::runtime_error("invariant '" + invariant + "' violated at t=" +
                           std::to_string(t) + ": " + detail),
        invariant_(std::move(invariant)),
        time_(t) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double time() const noexcept { return time_; }

 private:
  std::string invariant_;
  double time_;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirac_noise
