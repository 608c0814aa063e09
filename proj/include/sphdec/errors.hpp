#pragma once

#include <stdexcept>
#include <string>

namespace sphdec {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DivideByZero : std::domain_error {
  using std::domain_error::domain_error;
};

struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid experiment specification; `field` names the offending entry.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& field_name, const std::string& what_arg)
      : std::runtime_error(field_name + ": " + what_arg), field(field_name) {}
  std::string field;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sphdec
