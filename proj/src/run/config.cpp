#include "run/config.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>

#include "isolator/two_level.hpp"

namespace isolator::run {

namespace {

const std::vector<std::string> kKnownOutputs = {
    "t_lr", "t_rl", "delta_t", "delta_t_norm", "t_coh_lr", "t_inc_lr", "t_coh_rl", "t_inc_rl"};

ModelKind parse_model(const std::string& s) {
  if (s == "two_level") return ModelKind::TwoLevel;
  if (s == "three_level") return ModelKind::ThreeLevel;
  throw ConfigError("model: expected 'two_level' or 'three_level', got '" + s + "'");
}

ScenarioKind parse_scenario(const std::string& s) {
  if (s == "single_beam") return ScenarioKind::SingleBeam;
  if (s == "two_beam") return ScenarioKind::TwoBeam;
  throw ConfigError("scenario: expected 'single_beam' or 'two_beam', got '" + s + "'");
}

grid::Scale parse_scale(const std::string& s) {
  if (s == "linear") return grid::Scale::Linear;
  if (s == "log") return grid::Scale::Log;
  throw ConfigError("grid.scale: expected 'linear' or 'log', got '" + s + "'");
}

double require_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field + ": expected a number");
  return j.get<double>();
}

grid::GridSpec parse_grid(const nlohmann::json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field + ": expected an object");
  grid::GridSpec g;
  if (!j.contains("min") || !j.contains("max") || !j.contains("count")) {
    throw ConfigError(field + ": needs min, max, count");
  }
  g.min = require_number(j.at("min"), field + ".min");
  g.max = require_number(j.at("max"), field + ".max");
  const auto& count = j.at("count");
  if (!count.is_number_integer() || count.get<long long>() < 1) {
    throw ConfigError(field + ".count: expected a positive integer");
  }
  g.count = count.get<std::size_t>();
  if (j.contains("scale")) g.scale = parse_scale(j.at("scale").get<std::string>());
  return g;
}

nlohmann::json grid_to_json(const grid::GridSpec& g) {
  return {{"min", g.min},
          {"max", g.max},
          {"count", g.count},
          {"scale", g.scale == grid::Scale::Linear ? "linear" : "log"}};
}

}  // namespace

double BackwardConfig::resolve_intensity(double i_cr) const {
  if (intensity) return *intensity;
  if (zeta) return *zeta * i_cr;
  return 0.0;
}

DriveParams3 ScenarioConfig::drive3_or_default() const {
  if (drive3) return *drive3;
  return DriveParams3{0.01, 0.02, 0.001};
}

void ScenarioConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("params.") + e.what());
  }
  if (drive3) {
    if (model != ModelKind::ThreeLevel) {
      throw ConfigError("drive3: only valid with model 'three_level'");
    }
    try {
      drive3->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("drive3.") + e.what());
    }
  }
  if (backward && scenario != ScenarioKind::TwoBeam) {
    throw ConfigError("backward: only valid with scenario 'two_beam'");
  }
  if (scenario == ScenarioKind::TwoBeam && model != ModelKind::TwoLevel) {
    throw ConfigError("scenario: two_beam is only supported for the two-level model");
  }
  if (scenario == ScenarioKind::TwoBeam && !backward) {
    throw ConfigError("backward: required when scenario is 'two_beam'");
  }
  if (backward) {
    if (backward->intensity && backward->zeta) {
      throw ConfigError("backward: give either intensity or zeta, not both");
    }
    if (!backward->intensity && !backward->zeta) {
      throw ConfigError("backward: needs intensity or zeta");
    }
    const double v = backward->intensity ? *backward->intensity : *backward->zeta;
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("backward: intensity/zeta must be >= 0 and finite");
    }
  }
  if (intensity_grid.count < 1) throw ConfigError("intensity_grid.count: must be >= 1");
  try {
    (void)grid::make_grid(intensity_grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("intensity_grid: ") + e.what());
  }
  if (intensity_grid.min < 0.0) throw ConfigError("intensity_grid.min: must be >= 0");
  if (spectrum_grid) {
    try {
      (void)grid::make_grid(*spectrum_grid);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("spectrum_grid: ") + e.what());
    }
  }
  for (const auto& o : outputs) {
    if (std::find(kKnownOutputs.begin(), kKnownOutputs.end(), o) == kKnownOutputs.end()) {
      throw ConfigError("outputs: unknown observable '" + o + "'");
    }
  }
  if (intensity < 0.0 || !std::isfinite(intensity)) {
    throw ConfigError("intensity: must be >= 0 and finite");
  }
  if (threads < 1) throw ConfigError("threads: must be >= 1");
}

nlohmann::json ScenarioConfig::to_json() const {
  nlohmann::json j;
  j["model"] = to_string(model);
  j["params"] = {{"gamma_l", params.gamma_l},
                 {"gamma_r", params.gamma_r},
                 {"gamma_nonrad", params.gamma_nonrad},
                 {"gamma_dephase", params.gamma_dephase},
                 {"detuning_p", params.detuning_p}};
  if (drive3) {
    j["drive3"] = {{"rabi_c", drive3->rabi_c},
                   {"detuning_c", drive3->detuning_c},
                   {"gamma_dephase_s", drive3->gamma_dephase_s}};
  }
  j["scenario"] = to_string(scenario);
  j["intensity_grid"] = grid_to_json(intensity_grid);
  if (spectrum_grid) j["spectrum_grid"] = grid_to_json(*spectrum_grid);
  if (backward) {
    nlohmann::json b;
    if (backward->intensity) b["intensity"] = *backward->intensity;
    if (backward->zeta) b["zeta"] = *backward->zeta;
    b["phase"] = backward->phase;
    j["backward"] = b;
  }
  if (!outputs.empty()) j["outputs"] = outputs;
  j["direction"] = to_string(direction);
  j["intensity"] = intensity;
  j["threads"] = threads;
  return j;
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ScenarioConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "model") {
      cfg.model = parse_model(value.get<std::string>());
    } else if (key == "params") {
      if (!value.is_object()) throw ConfigError("params: expected an object");
      for (const auto& [pk, pv] : value.items()) {
        const double num = require_number(pv, "params." + pk);
        if (pk == "gamma_l") cfg.params.gamma_l = num;
        else if (pk == "gamma_r") cfg.params.gamma_r = num;
        else if (pk == "gamma_nonrad") cfg.params.gamma_nonrad = num;
        else if (pk == "gamma_dephase") cfg.params.gamma_dephase = num;
        else if (pk == "detuning_p") cfg.params.detuning_p = num;
        else throw ConfigError("params." + pk + ": unknown field");
      }
    } else if (key == "drive3") {
      if (!value.is_object()) throw ConfigError("drive3: expected an object");
      DriveParams3 d;
      for (const auto& [dk, dv] : value.items()) {
        const double num = require_number(dv, "drive3." + dk);
        if (dk == "rabi_c") d.rabi_c = num;
        else if (dk == "detuning_c") d.detuning_c = num;
        else if (dk == "gamma_dephase_s") d.gamma_dephase_s = num;
        else throw ConfigError("drive3." + dk + ": unknown field");
      }
      cfg.drive3 = d;
    } else if (key == "scenario") {
      cfg.scenario = parse_scenario(value.get<std::string>());
    } else if (key == "intensity_grid") {
      cfg.intensity_grid = parse_grid(value, "intensity_grid");
    } else if (key == "spectrum_grid") {
      cfg.spectrum_grid = parse_grid(value, "spectrum_grid");
    } else if (key == "backward") {
      if (!value.is_object()) throw ConfigError("backward: expected an object");
      BackwardConfig b;
      for (const auto& [bk, bv] : value.items()) {
        if (bk == "intensity") b.intensity = require_number(bv, "backward.intensity");
        else if (bk == "zeta") b.zeta = require_number(bv, "backward.zeta");
        else if (bk == "phase") b.phase = require_number(bv, "backward.phase");
        else throw ConfigError("backward." + bk + ": unknown field");
      }
      cfg.backward = b;
    } else if (key == "outputs") {
      if (!value.is_array()) throw ConfigError("outputs: expected an array of strings");
      for (const auto& o : value) cfg.outputs.push_back(o.get<std::string>());
    } else if (key == "direction") {
      const std::string s = value.get<std::string>();
      if (s == "left") cfg.direction = Side::Left;
      else if (s == "right") cfg.direction = Side::Right;
      else throw ConfigError("direction: expected 'left' or 'right'");
    } else if (key == "intensity") {
      cfg.intensity = require_number(value, "intensity");
    } else if (key == "threads") {
      if (!value.is_number_integer()) throw ConfigError("threads: expected an integer");
      cfg.threads = value.get<int>();
    } else {
      throw ConfigError(key + ": unknown config field");
    }
  }
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config file not readable: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file parse error: " + std::string(e.what()));
  }
  return ScenarioConfig::from_json(j);
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string dump = cfg.to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(ModelKind m) {
  return m == ModelKind::TwoLevel ? "two_level" : "three_level";
}

std::string to_string(ScenarioKind s) {
  return s == ScenarioKind::SingleBeam ? "single_beam" : "two_beam";
}

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

}  // namespace isolator::run
