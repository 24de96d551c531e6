#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "isolator/errors.hpp"
#include "run/config.hpp"
#include "run/figures.hpp"
#include "run/runner.hpp"
#include "run/selfcheck.hpp"

namespace {

using namespace isolator;
using namespace isolator::run;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitModel = 2;
constexpr int kExitSelfcheck = 3;

struct FlagOverrides {
  std::optional<std::string> model, scenario, direction, grid_scale, outputs;
  std::optional<double> gamma_l, gamma_r, gamma_nonrad, gamma_dephase, detuning_p;
  std::optional<double> rabi_c, detuning_c, gamma_dephase_s;
  std::optional<double> grid_min, grid_max;
  std::optional<long long> grid_count;
  std::optional<double> spec_grid_min, spec_grid_max;
  std::optional<long long> spec_grid_count;
  std::optional<double> backward_intensity, backward_zeta, backward_phase;
  std::optional<double> intensity;
  std::optional<int> threads;
};

void add_flag_options(CLI::App* cmd, FlagOverrides& f) {
  cmd->add_option("--model", f.model, "two_level or three_level");
  cmd->add_option("--scenario", f.scenario, "single_beam or two_beam");
  cmd->add_option("--direction", f.direction, "left or right incidence");
  cmd->add_option("--gamma-l", f.gamma_l, "left waveguide coupling rate");
  cmd->add_option("--gamma-r", f.gamma_r, "right waveguide coupling rate");
  cmd->add_option("--gamma-nonrad", f.gamma_nonrad, "nonradiative decay rate");
  cmd->add_option("--gamma-dephase", f.gamma_dephase, "pure dephasing rate of |e>");
  cmd->add_option("--detuning-p", f.detuning_p, "probe detuning");
  cmd->add_option("--rabi-c", f.rabi_c, "drive Rabi frequency (3LA)");
  cmd->add_option("--detuning-c", f.detuning_c, "drive detuning (3LA)");
  cmd->add_option("--gamma-dephase-s", f.gamma_dephase_s, "|s> dephasing rate (3LA)");
  cmd->add_option("--grid-min", f.grid_min, "intensity grid minimum");
  cmd->add_option("--grid-max", f.grid_max, "intensity grid maximum");
  cmd->add_option("--grid-count", f.grid_count, "intensity grid point count");
  cmd->add_option("--grid-scale", f.grid_scale, "linear or log");
  cmd->add_option("--spectrum-grid-min", f.spec_grid_min, "spectrum grid minimum offset");
  cmd->add_option("--spectrum-grid-max", f.spec_grid_max, "spectrum grid maximum offset");
  cmd->add_option("--spectrum-grid-count", f.spec_grid_count, "spectrum grid point count");
  cmd->add_option("--backward-intensity", f.backward_intensity, "backward beam intensity");
  cmd->add_option("--backward-zeta", f.backward_zeta,
                  "backward intensity as a fraction of the 2LA critical intensity");
  cmd->add_option("--backward-phase", f.backward_phase, "backward beam phase");
  cmd->add_option("--intensity", f.intensity, "input intensity for point commands");
  cmd->add_option("--threads", f.threads, "worker threads for grid evaluation");
}

ScenarioConfig effective_config(const std::optional<std::string>& config_path,
                                const FlagOverrides& f) {
  ScenarioConfig cfg;
  if (config_path) cfg = load_config_file(*config_path);

  if (f.model) {
    if (*f.model == "two_level") cfg.model = ModelKind::TwoLevel;
    else if (*f.model == "three_level") cfg.model = ModelKind::ThreeLevel;
    else throw ConfigError("--model: expected two_level or three_level");
  }
  if (f.scenario) {
    if (*f.scenario == "single_beam") cfg.scenario = ScenarioKind::SingleBeam;
    else if (*f.scenario == "two_beam") cfg.scenario = ScenarioKind::TwoBeam;
    else throw ConfigError("--scenario: expected single_beam or two_beam");
  }
  if (f.direction) {
    if (*f.direction == "left") cfg.direction = Side::Left;
    else if (*f.direction == "right") cfg.direction = Side::Right;
    else throw ConfigError("--direction: expected left or right");
  }
  if (f.gamma_l) cfg.params.gamma_l = *f.gamma_l;
  if (f.gamma_r) cfg.params.gamma_r = *f.gamma_r;
  if (f.gamma_nonrad) cfg.params.gamma_nonrad = *f.gamma_nonrad;
  if (f.gamma_dephase) cfg.params.gamma_dephase = *f.gamma_dephase;
  if (f.detuning_p) cfg.params.detuning_p = *f.detuning_p;

  if (f.rabi_c || f.detuning_c || f.gamma_dephase_s) {
    DriveParams3 d3 = cfg.drive3_or_default();
    if (f.rabi_c) d3.rabi_c = *f.rabi_c;
    if (f.detuning_c) d3.detuning_c = *f.detuning_c;
    if (f.gamma_dephase_s) d3.gamma_dephase_s = *f.gamma_dephase_s;
    cfg.drive3 = d3;
  }
  if (f.grid_min) cfg.intensity_grid.min = *f.grid_min;
  if (f.grid_max) cfg.intensity_grid.max = *f.grid_max;
  if (f.grid_count) {
    if (*f.grid_count < 1) throw ConfigError("--grid-count: must be >= 1");
    cfg.intensity_grid.count = static_cast<std::size_t>(*f.grid_count);
  }
  if (f.grid_scale) {
    if (*f.grid_scale == "linear") cfg.intensity_grid.scale = grid::Scale::Linear;
    else if (*f.grid_scale == "log") cfg.intensity_grid.scale = grid::Scale::Log;
    else throw ConfigError("--grid-scale: expected linear or log");
  }
  if (f.spec_grid_min || f.spec_grid_max || f.spec_grid_count) {
    grid::GridSpec g = cfg.spectrum_grid.value_or(grid::GridSpec{-1.0, 1.0, 2001,
                                                                 grid::Scale::Linear});
    if (f.spec_grid_min) g.min = *f.spec_grid_min;
    if (f.spec_grid_max) g.max = *f.spec_grid_max;
    if (f.spec_grid_count) {
      if (*f.spec_grid_count < 1) throw ConfigError("--spectrum-grid-count: must be >= 1");
      g.count = static_cast<std::size_t>(*f.spec_grid_count);
    }
    cfg.spectrum_grid = g;
  }
  if (f.backward_intensity || f.backward_zeta || f.backward_phase) {
    BackwardConfig b = cfg.backward.value_or(BackwardConfig{});
    if (f.backward_intensity) b.intensity = *f.backward_intensity;
    if (f.backward_zeta) b.zeta = *f.backward_zeta;
    if (f.backward_phase) b.phase = *f.backward_phase;
    cfg.backward = b;
  }
  if (f.intensity) cfg.intensity = *f.intensity;
  if (f.threads) cfg.threads = *f.threads;
  return cfg;
}

int run_command(const std::string& command, const ScenarioConfig& cfg,
                const std::filesystem::path& out_dir) {
  RunResult result;
  if (command == "steady2") result = run_steady2(cfg);
  else if (command == "steady3") result = run_steady3(cfg);
  else if (command == "sweep") result = run_sweep(cfg);
  else if (command == "spectrum") result = run_spectrum(cfg);
  else if (command == "twobeam") result = run_twobeam(cfg);
  else if (command == "critical") result = run_critical(cfg);
  write_outputs(result, cfg, command, out_dir);
  for (const auto& [stem, table] : result.tables) {
    std::cout << (out_dir / (stem + ".csv")).string() << ": " << table.rows().size()
              << " row(s)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonreciprocal transmission through waveguide-coupled atoms"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::string out_dir = "out";
  app.add_option("--config", config_path, "JSON config file")->envname("ISOLATOR_CONFIG");
  app.add_option("--out", out_dir, "output directory");

  FlagOverrides flags;
  std::string figures_which = "all";

  CLI::App* steady2 = app.add_subcommand("steady2", "two-level steady state at one intensity");
  CLI::App* steady3 = app.add_subcommand("steady3", "three-level steady state at one intensity");
  CLI::App* sweep = app.add_subcommand("sweep", "transmission over an intensity grid");
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "coherent/incoherent spectral decomposition");
  CLI::App* twobeam = app.add_subcommand("twobeam", "forward beam with a weak backward beam");
  CLI::App* critical = app.add_subcommand("critical", "critical intensity and maximum NR");
  CLI::App* figures = app.add_subcommand("figures", "emit bundled figure data as CSV");
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the model invariant suite");

  for (CLI::App* cmd : {steady2, steady3, sweep, spectrum_cmd, twobeam, critical}) {
    add_flag_options(cmd, flags);
  }
  figures->add_option("--which", figures_which, "fig2a..fig5 or 'all'");
  figures->add_option("--threads", flags.threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (selfcheck->parsed()) {
      return run::run_selfcheck(std::cout) == 0 ? kExitOk : kExitSelfcheck;
    }
    if (figures->parsed()) {
      const int threads = flags.threads.value_or(1);
      std::filesystem::create_directories(out_dir);
      std::vector<std::string> names;
      if (figures_which == "all") names = figure_names();
      else names.push_back(figures_which);
      nlohmann::json manifest;
      manifest["command"] = "figures";
      manifest["which"] = figures_which;
      manifest["tool_version"] = kToolVersion;
      nlohmann::json files = nlohmann::json::array();
      for (const auto& name : names) {
        const CsvTable table = make_figure(name, threads);
        table.write(std::filesystem::path(out_dir) / (name + ".csv"));
        files.push_back(name + ".csv");
        std::cout << (std::filesystem::path(out_dir) / (name + ".csv")).string() << ": "
                  << table.rows().size() << " row(s)\n";
      }
      manifest["outputs"] = files;
      std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json", std::ios::binary);
      mf << manifest.dump(2) << "\n";
      return kExitOk;
    }

    const ScenarioConfig cfg = effective_config(config_path, flags);
    const std::pair<const char*, CLI::App*> commands[] = {
        {"steady2", steady2},      {"steady3", steady3}, {"sweep", sweep},
        {"spectrum", spectrum_cmd}, {"twobeam", twobeam}, {"critical", critical}};
    for (const auto& [name, cmd] : commands) {
      if (cmd->parsed()) return run_command(name, cfg, out_dir);
    }
    std::cerr << "error: no command selected\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ModelRunError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const grid::GridPointError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  }
}
