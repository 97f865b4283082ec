#pragma once

#include <stdexcept>
#include <string>

namespace tsclab {

/// Invalid configuration. The message carries the offending field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken simulation invariant (collision, stepping a finished episode, ...).
/// These abort the run; they are bugs, not recoverable conditions.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite loss or gradient in the learner.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tsclab
