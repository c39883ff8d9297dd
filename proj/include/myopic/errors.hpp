#pragma once

#include <stdexcept>
#include <string>

namespace myopic {

// Caller violated an operation's precondition (bad dimension, empty input,
// unknown id, malformed file). The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A scenario construction or adversary was applied to a configuration that
// does not have the required shape.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace myopic
