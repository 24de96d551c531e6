#include "run/runner.hpp"

#include <algorithm>
#include <fstream>

#include "isolator/grid.hpp"
#include "isolator/spectrum.hpp"
#include "isolator/three_level.hpp"
#include "isolator/two_level.hpp"

namespace isolator::run {

const char* const kToolVersion = "1.0.0";

namespace {

bool wants(const ScenarioConfig& cfg, const std::string& name) {
  if (cfg.outputs.empty()) {
    return name == "t_lr" || name == "t_rl" || name == "delta_t" || name == "delta_t_norm";
  }
  return std::find(cfg.outputs.begin(), cfg.outputs.end(), name) != cfg.outputs.end();
}

void echo_params_header(const ScenarioConfig& cfg, std::vector<std::string>& h) {
  h.insert(h.end(), {"model", "scenario", "gamma_l", "gamma_r", "gamma_nonrad",
                     "gamma_dephase", "detuning_p"});
  if (cfg.model == ModelKind::ThreeLevel) {
    h.insert(h.end(), {"rabi_c", "detuning_c", "gamma_dephase_s"});
  }
}

void echo_params_row(const ScenarioConfig& cfg, std::vector<CsvValue>& row) {
  row.emplace_back(to_string(cfg.model));
  row.emplace_back(to_string(cfg.scenario));
  row.emplace_back(cfg.params.gamma_l);
  row.emplace_back(cfg.params.gamma_r);
  row.emplace_back(cfg.params.gamma_nonrad);
  row.emplace_back(cfg.params.gamma_dephase);
  row.emplace_back(cfg.params.detuning_p);
  if (cfg.model == ModelKind::ThreeLevel) {
    const DriveParams3 d3 = cfg.drive3_or_default();
    row.emplace_back(d3.rabi_c);
    row.emplace_back(d3.detuning_c);
    row.emplace_back(d3.gamma_dephase_s);
  }
}

double resolve_backward_intensity(const ScenarioConfig& cfg) {
  const double i_cr = two_level::critical_point(cfg.params).i_cr;
  return cfg.backward->resolve_intensity(i_cr);
}

}  // namespace

RunResult run_steady2(const ScenarioConfig& cfg) {
  cfg.validate();
  const BeamDrive beam = BeamDrive::from_intensity(cfg.params, cfg.direction, cfg.intensity);
  const auto ss = two_level::steady_state_2la(cfg.params, beam);
  const auto pc = two_level::port_currents(cfg.params, beam, ss);

  std::vector<std::string> header;
  echo_params_header(cfg, header);
  header.insert(header.end(), {"direction", "i_in", "s1_re", "s1_im", "s2", "j_pa", "j_pb",
                               "j_pd", "transmission", "reflection", "loss"});
  CsvTable table(header);
  std::vector<CsvValue> row;
  echo_params_row(cfg, row);
  row.emplace_back(to_string(cfg.direction));
  row.emplace_back(cfg.intensity);
  row.emplace_back(ss.s1.real());
  row.emplace_back(ss.s1.imag());
  row.emplace_back(ss.s2);
  row.emplace_back(pc.j_pa);
  row.emplace_back(pc.j_pb);
  row.emplace_back(pc.j_pd);
  row.emplace_back(pc.transmission);
  row.emplace_back(pc.reflection);
  row.emplace_back(pc.loss);
  table.add_row(std::move(row));

  RunResult res;
  res.tables.emplace_back("steady2", std::move(table));
  return res;
}

RunResult run_steady3(const ScenarioConfig& cfg) {
  ScenarioConfig c = cfg;
  c.model = ModelKind::ThreeLevel;
  c.validate();
  const DriveParams3 d3 = c.drive3_or_default();
  if (!(c.intensity > 0.0)) throw ConfigError("intensity: steady3 needs intensity > 0");

  const BeamDrive beam = BeamDrive::from_intensity(c.params, c.direction, c.intensity);
  three_level::SteadyState3La ss;
  try {
    ss = three_level::steady_state_3la(c.params, d3, beam);
  } catch (const std::runtime_error& e) {
    throw ModelRunError(e.what());
  }
  const double gamma_out = c.params.coupling(opposite(c.direction));
  const double t = 2.0 * gamma_out * ss.s2() / (group_velocity * c.intensity);

  std::vector<std::string> header;
  echo_params_header(c, header);
  header.insert(header.end(), {"direction", "i_in"});
  const char* names[8] = {"s1", "s1_conj", "s2", "m1", "m1_conj", "m2", "n", "n_conj"};
  for (const char* n : names) {
    header.push_back(std::string(n) + "_re");
    header.push_back(std::string(n) + "_im");
  }
  header.push_back("transmission");

  CsvTable table(header);
  std::vector<CsvValue> row;
  echo_params_row(c, row);
  row.emplace_back(to_string(c.direction));
  row.emplace_back(c.intensity);
  for (const Complex& v : ss.m) {
    row.emplace_back(v.real());
    row.emplace_back(v.imag());
  }
  row.emplace_back(t);
  table.add_row(std::move(row));

  RunResult res;
  res.tables.emplace_back("steady3", std::move(table));
  return res;
}

RunResult run_sweep(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::vector<double> grid = grid::make_grid(cfg.intensity_grid);

  std::vector<std::string> header;
  echo_params_header(cfg, header);
  if (cfg.scenario == ScenarioKind::TwoBeam) {
    header.insert(header.end(), {"i_b", "backward_phase"});
  }
  header.push_back("i_in");
  const std::vector<std::string> observables = {"t_lr",     "t_rl",     "delta_t",
                                                "delta_t_norm", "t_coh_lr", "t_inc_lr",
                                                "t_coh_rl", "t_inc_rl"};
  std::vector<std::string> selected;
  for (const auto& o : observables) {
    if (wants(cfg, o)) selected.push_back(o);
  }
  header.insert(header.end(), selected.begin(), selected.end());
  CsvTable table(header);

  const bool need_split = wants(cfg, "t_coh_lr") || wants(cfg, "t_inc_lr") ||
                          wants(cfg, "t_coh_rl") || wants(cfg, "t_inc_rl");

  struct Row {
    two_level::NonreciprocityResult nr;
    double t_coh_lr = 0.0, t_inc_lr = 0.0, t_coh_rl = 0.0, t_inc_rl = 0.0;
  };

  std::vector<Row> rows;
  try {
    if (cfg.model == ModelKind::TwoLevel) {
      std::optional<two_level::TwoBeamSpec> tb;
      if (cfg.scenario == ScenarioKind::TwoBeam) {
        tb = two_level::TwoBeamSpec{resolve_backward_intensity(cfg), cfg.backward->phase};
      }
      rows = grid::map_parallel<Row>(grid.size(), cfg.threads, [&](std::size_t i) {
        Row r;
        if (tb) {
          const BeamDrive fwd = BeamDrive::from_intensity(cfg.params, Side::Left, grid[i]);
          const BeamDrive bwd = BeamDrive::from_intensity(cfg.params, Side::Right,
                                                          tb->backward_intensity,
                                                          tb->backward_phase);
          r.nr = two_level::two_beam(cfg.params, fwd, bwd).nr;
        } else {
          r.nr = two_level::nonreciprocity(cfg.params, grid[i]);
          if (need_split) {
            r.t_coh_lr = spectrum::coherent_transmission(cfg.params, grid[i], Side::Left);
            r.t_inc_lr = r.nr.t_lr - r.t_coh_lr;
            r.t_coh_rl = spectrum::coherent_transmission(cfg.params, grid[i], Side::Right);
            r.t_inc_rl = r.nr.t_rl - r.t_coh_rl;
          }
        }
        return r;
      });
    } else {
      const DriveParams3 d3 = cfg.drive3_or_default();
      rows = grid::map_parallel<Row>(grid.size(), cfg.threads, [&](std::size_t i) {
        Row r;
        r.nr.t_lr = three_level::transmission_3la(cfg.params, d3, grid[i], Side::Left);
        r.nr.t_rl = three_level::transmission_3la(cfg.params, d3, grid[i], Side::Right);
        r.nr.delta_t = r.nr.t_lr - r.nr.t_rl;
        const double mean = r.nr.t_lr + r.nr.t_rl;
        r.nr.delta_t_normalized = mean != 0.0 ? 2.0 * r.nr.delta_t / mean : 0.0;
        if (need_split && grid[i] > 0.0) {
          const auto sl = spectrum::transmission_split_3la(cfg.params, d3, grid[i], Side::Left);
          const auto sr = spectrum::transmission_split_3la(cfg.params, d3, grid[i], Side::Right);
          r.t_coh_lr = sl.t_coh;
          r.t_inc_lr = sl.t_inc;
          r.t_coh_rl = sr.t_coh;
          r.t_inc_rl = sr.t_inc;
        }
        return r;
      });
    }
  } catch (const grid::GridPointError& e) {
    throw ModelRunError(e.what());
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<CsvValue> row;
    echo_params_row(cfg, row);
    if (cfg.scenario == ScenarioKind::TwoBeam) {
      row.emplace_back(resolve_backward_intensity(cfg));
      row.emplace_back(cfg.backward->phase);
    }
    row.emplace_back(grid[i]);
    for (const auto& name : selected) {
      const Row& r = rows[i];
      if (name == "t_lr") row.emplace_back(r.nr.t_lr);
      else if (name == "t_rl") row.emplace_back(r.nr.t_rl);
      else if (name == "delta_t") row.emplace_back(r.nr.delta_t);
      else if (name == "delta_t_norm") row.emplace_back(r.nr.delta_t_normalized);
      else if (name == "t_coh_lr") row.emplace_back(r.t_coh_lr);
      else if (name == "t_inc_lr") row.emplace_back(r.t_inc_lr);
      else if (name == "t_coh_rl") row.emplace_back(r.t_coh_rl);
      else if (name == "t_inc_rl") row.emplace_back(r.t_inc_rl);
    }
    table.add_row(std::move(row));
  }

  RunResult res;
  res.tables.emplace_back("sweep", std::move(table));
  return res;
}

RunResult run_spectrum(const ScenarioConfig& cfg) {
  cfg.validate();
  grid::GridSpec gspec;
  if (cfg.spectrum_grid) {
    gspec = *cfg.spectrum_grid;
  } else {
    const DerivedRates r = derive_rates(cfg.params);
    gspec = {-20.0 * r.gamma_t, 20.0 * r.gamma_t, 2001, grid::Scale::Linear};
  }
  const std::vector<double> omega = grid::make_grid(gspec);
  const BeamDrive beam = BeamDrive::from_intensity(cfg.params, cfg.direction, cfg.intensity);

  spectrum::SpectrumDecomposition dec;
  try {
    if (cfg.model == ModelKind::TwoLevel) {
      dec = spectrum::incoherent_spectrum(cfg.params, beam, omega, cfg.threads);
    } else {
      dec = spectrum::spectrum_3la(cfg.params, cfg.drive3_or_default(), beam, omega,
                                   cfg.threads);
    }
  } catch (const std::runtime_error& e) {
    throw ModelRunError(e.what());
  }

  CsvTable density({"omega_minus_omega_p", "p_inc"});
  for (const auto& [w, p] : dec.incoherent_density) {
    density.add_row({w, p});
  }

  std::vector<std::string> header;
  echo_params_header(cfg, header);
  header.insert(header.end(),
                {"direction", "i_in", "coherent_weight", "t_coh", "t_inc", "t_total"});
  CsvTable summary(header);
  std::vector<CsvValue> row;
  echo_params_row(cfg, row);
  row.emplace_back(to_string(cfg.direction));
  row.emplace_back(cfg.intensity);
  row.emplace_back(dec.coherent_weight);
  row.emplace_back(dec.t_coh);
  row.emplace_back(dec.t_inc);
  row.emplace_back(dec.t_coh + dec.t_inc);
  summary.add_row(std::move(row));

  RunResult res;
  res.tables.emplace_back("spectrum", std::move(density));
  res.tables.emplace_back("spectrum_summary", std::move(summary));
  return res;
}

RunResult run_twobeam(const ScenarioConfig& cfg) {
  ScenarioConfig c = cfg;
  c.scenario = ScenarioKind::TwoBeam;
  if (!c.backward) throw ConfigError("backward: required for the twobeam command");
  return run_sweep(c);
}

RunResult run_critical(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto cp = two_level::critical_point(cfg.params);
  // cross-check the closed form against a direct numeric maximization
  const auto num = numerics::maximize_scalar(
      [&](double i) { return two_level::nonreciprocity(cfg.params, i).delta_t; }, 0.0,
      10.0 * cp.i_cr, 1e-9 * cp.i_cr);

  std::vector<std::string> header;
  echo_params_header(cfg, header);
  header.insert(header.end(),
                {"i_cr", "delta_t_cr", "i_cr_numeric", "delta_t_at_i_cr_numeric"});
  CsvTable table(header);
  std::vector<CsvValue> row;
  echo_params_row(cfg, row);
  row.emplace_back(cp.i_cr);
  row.emplace_back(cp.delta_t_cr);
  row.emplace_back(num.x);
  row.emplace_back(num.value);
  table.add_row(std::move(row));

  RunResult res;
  res.tables.emplace_back("critical", std::move(table));
  return res;
}

void write_outputs(const RunResult& result, const ScenarioConfig& cfg,
                   const std::string& command, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  nlohmann::json manifest;
  manifest["command"] = command;
  manifest["config"] = cfg.to_json();
  manifest["config_hash"] = config_hash(cfg);
  manifest["tool_version"] = kToolVersion;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [stem, table] : result.tables) {
    const std::string name = stem + ".csv";
    table.write(out_dir / name);
    files.push_back(name);
  }
  manifest["outputs"] = files;

  std::ofstream f(out_dir / "manifest.json", std::ios::binary);
  if (!f) throw std::runtime_error("cannot write manifest.json");
  f << manifest.dump(2) << "\n";
}

}  // namespace isolator::run
