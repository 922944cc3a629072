#pragma once
#include <string>
#include <vector>

#include "config.hpp"

namespace sglab {

struct Artifact {
  std::string filename;
  std::string content;
};

struct RunResult {
  std::vector<Artifact> artifacts;
  std::string summary;  // one line per sub-result
};

// Executes one named command. Pure: no filesystem side effects, so a refusal
// anywhere leaves nothing half-written.
RunResult run_command(const ExperimentConfig& cfg, const std::string& command);

// Writes every artifact into dir (created if needed).
void write_artifacts(const RunResult& res, const std::string& dir);

}  // namespace sglab
