#pragma once

#include <stdexcept>
#include <string>

namespace sqgcrit {

/// Invalid arguments to a numerical operation (dimension mismatch, bad exponents, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A run configuration violates a constraint. `field()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Picard iteration failed to contract even at the smallest admissible window.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Non-finite state or gradient above the configured ceiling.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A file could not be opened, written or renamed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or truncated file, bad magic, version mismatch.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqgcrit
