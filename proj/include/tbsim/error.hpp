#pragma once

#include <stdexcept>
#include <string>

namespace tbsim {

/// Invalid user-supplied parameters. `field()` names the offending input.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& reason)
      : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// An operation was called on an object in the wrong state (e.g. dressing twice).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical invariant failed (non-finite input, SU(1,1) check rejected, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tbsim
