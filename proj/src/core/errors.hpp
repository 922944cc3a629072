#pragma once
#include <stdexcept>
#include <string>

namespace sglab {

// Error taxonomy mirrors the process exit codes: config/domain problems (2),
// numerical failures (3), resource-budget refusals (4).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& m) : std::runtime_error(m) {}
};

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 3;
  if (dynamic_cast<const ResourceError*>(&e)) return 4;
  return 3;
}

}  // namespace sglab
