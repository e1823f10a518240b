#pragma once

#include <stdexcept>
#include <string>

namespace snntwin {

// Bad configuration data: unresolvable profile, missing table entry,
// malformed input file. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A scenario mapping produced a value outside its admissible range
// (e.g. a sparsity that would leave [0,1]). The message names the
// offending bound.
class InfeasibleError : public std::domain_error {
public:
  explicit InfeasibleError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace snntwin
