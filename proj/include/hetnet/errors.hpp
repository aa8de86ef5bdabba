#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Geometric input on which the requested construction is undefined
/// (e.g. fewer than two Voronoi sites).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Scenario asks for tiers 2/3 but tier 1 produced no usable tessellation.
class DegenerateScenarioError : public Error {
 public:
  using Error::Error;
};

/// Analysis window too small to contain a single boundary-free cell.
class InsufficientWindowError : public Error {
 public:
  using Error::Error;
};

class EmptyNetworkError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario document. `field()` names the offending JSON path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hetnet
