#pragma once

#include <stdexcept>
#include <string>

namespace starspike {

// Bad data files, malformed tables, schema mismatches. CLI exit code 1.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration, unknown keys, out-of-range parameters. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariants map to std::logic_error (CLI exit code 3).
[[noreturn]] inline void invariant_failure(const std::string& msg) {
  throw std::logic_error("internal invariant violated: " + msg);
}

}  // namespace starspike
