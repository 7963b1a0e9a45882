#pragma once

#include <stdexcept>
#include <string>

namespace pullin {

// Thrown when an iterative solver exhausts its iteration budget without
// meeting its tolerance, or when a factorization fails.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the geometric up-scan of the pull-in search cannot bracket the
// pull-in value even after shrinking the seed.
class BracketError : public SolverError {
public:
  explicit BracketError(const std::string& what) : SolverError(what) {}
};

// Invalid user input: malformed files, inconsistent shapes, bad config keys.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// An output artifact could not be written (unwritable path, disk error).
// Distinct from ConfigError so the CLI can report it as a runtime failure
// rather than a configuration mistake.
class ReportError : public std::runtime_error {
public:
  explicit ReportError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pullin
