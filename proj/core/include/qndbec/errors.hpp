#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qndbec {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or missing configuration input. Carries the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Inputs that parse but violate a model precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NonPositiveOmegaMinus : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ZeroGain : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Failures of a numerical procedure on otherwise valid inputs.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class StiffnessError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientData : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoMinimumInBracket : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Non-fatal finding attached to a result (e.g. a regime assumption that is
/// only marginally satisfied).
struct Diagnostic {
  std::string code;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace qndbec
