#pragma once

#include <stdexcept>
#include <string>

namespace afd {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The solution (or a mollified/lifted version of it) reached the positivity
// floor; every operator in this library is undefined at u <= 0.
class PositivityViolation : public Error {
 public:
  using Error::Error;
};

// |theta| came within 1e-6 of pi/2, where tan(theta) is no longer finite.
class SlopeBlowup : public Error {
 public:
  using Error::Error;
};

class InsufficientRecords : public Error {
 public:
  using Error::Error;
};

class InvalidPreset : public Error {
 public:
  using Error::Error;
};

// Invalid run or fuzz configuration. field() names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& reason)
      : Error(field + ": " + reason), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace afd
