#ifndef ISOLATOR_RUN_CONFIG_HPP
#define ISOLATOR_RUN_CONFIG_HPP

#include <optional>
#include <string>

#include "isolator/grid.hpp"
#include "isolator/params.hpp"

#include "json.hpp"

namespace isolator::run {

// Raised on bad configuration; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ModelKind { TwoLevel, ThreeLevel };
enum class ScenarioKind { SingleBeam, TwoBeam };

struct BackwardConfig {
  std::optional<double> intensity;  // absolute backward intensity
  std::optional<double> zeta;       // or a fraction of the 2LA critical intensity
  double phase = 0.0;

  double resolve_intensity(double i_cr) const;
};

// Everything a run needs. Defaults reproduce the standard parameter set used
// throughout the bundled figure recipes.
struct ScenarioConfig {
  ModelKind model = ModelKind::TwoLevel;
  ModelParams params{0.03, 0.1, 0.003, 0.003, 0.0};
  std::optional<DriveParams3> drive3;
  ScenarioKind scenario = ScenarioKind::SingleBeam;
  grid::GridSpec intensity_grid{0.001, 2.0, 200, grid::Scale::Log};
  std::optional<grid::GridSpec> spectrum_grid;
  std::optional<BackwardConfig> backward;
  std::vector<std::string> outputs;  // empty means the scenario's core set
  Side direction = Side::Left;
  double intensity = 0.0;  // for single-point commands
  int threads = 1;

  // Cross-field checks; throws ConfigError with a field-level message.
  void validate() const;

  DriveParams3 drive3_or_default() const;

  nlohmann::json to_json() const;
  static ScenarioConfig from_json(const nlohmann::json& j);
};

ScenarioConfig load_config_file(const std::string& path);

// FNV-1a over the canonical JSON dump; stable across runs and platforms.
std::string config_hash(const ScenarioConfig& cfg);

std::string to_string(ModelKind m);
std::string to_string(ScenarioKind s);
std::string to_string(Side s);

}  // namespace isolator::run

#endif  // ISOLATOR_RUN_CONFIG_HPP
