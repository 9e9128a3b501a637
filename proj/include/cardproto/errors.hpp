#pragma once

#include <stdexcept>
#include <string>

namespace cardproto {

/// Bad user-supplied configuration: unknown scenario name, unreadable or
/// malformed dictionary, invalid flag values. The CLI maps this to exit 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A scenario's own script broke (e.g. an intercept predicate never
/// matched). Distinct from a protocol rejection, which is ordinary data.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cardproto
