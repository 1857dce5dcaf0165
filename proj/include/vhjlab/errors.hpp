#pragma once

#include <stdexcept>
#include <string>

namespace vhj {

// Invalid user input: bad grid parameters, malformed expressions, exponent
// ranges, incompatible data. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Runtime failure of a solve or a certification search. Maps to CLI exit
// code 3.
class SolverError : public std::runtime_error {
public:
  enum class Kind {
    NonFinite,
    HorizonTooShort,
    NoConvergence,
    ConstraintActive,
    SearchExhausted,
    EmptyWindow,
    InsufficientSamples,
  };

  SolverError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

} // namespace vhj
