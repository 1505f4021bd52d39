#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eyield {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input violates one or more invariants. Every violation is
/// listed, not only the first one found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A correlated-rate matrix had an eigenvalue too negative to clamp.
class NonPositiveRatesError : public Error {
 public:
  NonPositiveRatesError(double omega, double eigenvalue);

  double omega() const { return omega_; }
  double eigenvalue() const { return eigenvalue_; }

 private:
  double omega_;
  double eigenvalue_;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class StateInvariantError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace eyield
