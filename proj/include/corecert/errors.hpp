#pragma once

#include <stdexcept>
#include <string>

namespace corecert {

// Thrown when a game definition violates its structural invariants
// (agent count < 2, missing coalition values, ...).
class InvalidGameError : public std::runtime_error {
 public:
  explicit InvalidGameError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed configuration input: bad distribution parameters,
// schema violations, out-of-range experiment settings. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a caller violates an operation's precondition, e.g. running
// the compression function on an empty scenario core.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numerical routine cannot certify its result: root brackets
// not found, simplex iteration cap hit, rejection sampler starved.
// CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corecert
