#pragma once

#include <stdexcept>
#include <string>

namespace sivsim {

// Raised for bad user input: malformed scenario files, unknown keys, unit
// mismatches. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the physics cannot be computed as requested: dimension
// mismatches, non-convergent solves, degenerate steady states. Exit code 1.
class PhysicsError : public std::runtime_error {
 public:
  explicit PhysicsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sivsim
