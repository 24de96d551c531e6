#ifndef ISOLATOR_RUN_RUNNER_HPP
#define ISOLATOR_RUN_RUNNER_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "run/config.hpp"
#include "run/csv.hpp"

namespace isolator::run {

// Raised when the model fails at a specific point of a run (singular steady
// state, unstable drift, ...). The CLI maps it to exit code 2.
class ModelRunError : public std::runtime_error {
 public:
  explicit ModelRunError(const std::string& what) : std::runtime_error(what) {}
};

struct RunResult {
  std::vector<std::pair<std::string, CsvTable>> tables;  // file stem -> table
};

RunResult run_steady2(const ScenarioConfig& cfg);
RunResult run_steady3(const ScenarioConfig& cfg);
RunResult run_sweep(const ScenarioConfig& cfg);
RunResult run_spectrum(const ScenarioConfig& cfg);
RunResult run_twobeam(const ScenarioConfig& cfg);
RunResult run_critical(const ScenarioConfig& cfg);

// Writes every table as <stem>.csv plus a manifest.json recording the command,
// effective config, its hash, and the tool version. Output is byte-identical
// across reruns of the same config.
void write_outputs(const RunResult& result, const ScenarioConfig& cfg,
                   const std::string& command, const std::filesystem::path& out_dir);

extern const char* const kToolVersion;

}  // namespace isolator::run

#endif  // ISOLATOR_RUN_RUNNER_HPP
