#include "run/figures.hpp"

#include <stdexcept>

#include "isolator/grid.hpp"
#include "isolator/spectrum.hpp"
#include "isolator/three_level.hpp"
#include "isolator/two_level.hpp"

namespace isolator::run {

namespace {

const ModelParams kStandard{0.03, 0.1, 0.003, 0.003, 0.0};
const ModelParams kLossless{0.03, 0.1, 0.0, 0.0, 0.0};
const DriveParams3 kDriveLossless{0.01, 0.02, 0.0};
const DriveParams3 kDriveLossy{0.01, 0.02, 0.001};
constexpr double kZeta = 0.018;

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  return grid::make_grid({lo, hi, n, grid::Scale::Log});
}

CsvTable fig2a(int threads) {
  const double i_cr = two_level::critical_point(kStandard).i_cr;
  const auto scaled = log_grid(0.01, 20.0, 200);
  std::vector<double> intensities(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) intensities[i] = scaled[i] * i_cr;
  const auto curve = two_level::transmission_curve(kStandard, intensities, std::nullopt, threads);

  CsvTable t({"i_in", "i_over_icr", "t_lr", "t_rl", "delta_t", "delta_t_norm"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    t.add_row({intensities[i], scaled[i], curve[i].t_lr, curve[i].t_rl, curve[i].delta_t,
               curve[i].delta_t_normalized});
  }
  return t;
}

CsvTable fig2b(int threads) {
  CsvTable t({"curve", "gamma_l", "i_in", "i_over_icr", "delta_t"});
  const auto scaled = log_grid(0.01, 20.0, 200);

  for (double gl : {0.01, 0.03, 0.05}) {
    ModelParams p = kStandard;
    p.gamma_l = gl;
    const double i_cr = two_level::critical_point(p).i_cr;
    std::vector<double> intensities(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) intensities[i] = scaled[i] * i_cr;
    const auto curve = two_level::transmission_curve(p, intensities, std::nullopt, threads);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      t.add_row({std::string("single_beam"), gl, intensities[i], scaled[i],
                 curve[i].delta_t});
    }
  }

  // standard couplings with a weak backward beam at the opposite port
  const double i_cr = two_level::critical_point(kStandard).i_cr;
  std::vector<double> intensities(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) intensities[i] = scaled[i] * i_cr;
  const two_level::TwoBeamSpec tb{kZeta * i_cr, 0.0};
  const auto curve = two_level::transmission_curve(kStandard, intensities, tb, threads);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    t.add_row({std::string("two_beam"), kStandard.gamma_l, intensities[i], scaled[i],
               curve[i].delta_t});
  }
  return t;
}

CsvTable fig2c(int) {
  CsvTable t({"curve", "gamma_r", "delta_t_cr"});
  const auto gr_grid = grid::make_grid({0.002, 0.3, 150, grid::Scale::Linear});

  struct Variant {
    const char* label;
    ModelParams params;
  };
  const std::vector<Variant> variants = {
      {"base", kStandard},
      {"gamma_nonrad_0.01", {0.03, 0.1, 0.01, 0.003, 0.0}},
      {"gamma_dephase_0.01", {0.03, 0.1, 0.003, 0.01, 0.0}},
      {"detuning_0.01", {0.03, 0.1, 0.003, 0.003, 0.01}},
  };
  for (const auto& v : variants) {
    const auto sweep = two_level::sweep_delta_t_cr_vs_gamma_r(v.params, gr_grid);
    for (const auto& [gr, dt] : sweep) {
      t.add_row({std::string(v.label), gr, dt});
    }
  }
  return t;
}

CsvTable fig3a(int threads) {
  const double i0 = spectrum::nonreciprocity_decomposition(kStandard, 0.0).i_zero;
  const auto scaled = log_grid(0.01, 30.0, 200);

  CsvTable t({"i_in", "i_over_i0", "t_coh_lr", "t_inc_lr", "t_coh_rl", "t_inc_rl"});
  struct Row {
    double cl, il, cr, ir;
  };
  const auto rows = grid::map_parallel<Row>(scaled.size(), threads, [&](std::size_t i) {
    const double intensity = scaled[i] * i0;
    const auto nr = two_level::nonreciprocity(kStandard, intensity);
    Row r;
    r.cl = spectrum::coherent_transmission(kStandard, intensity, Side::Left);
    r.il = nr.t_lr - r.cl;
    r.cr = spectrum::coherent_transmission(kStandard, intensity, Side::Right);
    r.ir = nr.t_rl - r.cr;
    return r;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t.add_row({scaled[i] * i0, scaled[i], rows[i].cl, rows[i].il, rows[i].cr, rows[i].ir});
  }
  return t;
}

CsvTable fig3b(int threads) {
  const double i0 = spectrum::nonreciprocity_decomposition(kStandard, 0.0).i_zero;
  const auto scaled = log_grid(0.01, 30.0, 200);

  CsvTable t({"i_in", "i_over_i0", "delta_t_coh", "delta_t_inc", "delta_t"});
  struct Row {
    double coh, inc;
  };
  const auto rows = grid::map_parallel<Row>(scaled.size(), threads, [&](std::size_t i) {
    const auto dec = spectrum::nonreciprocity_decomposition(kStandard, scaled[i] * i0);
    return Row{dec.delta_t_coh, dec.delta_t_inc};
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t.add_row({scaled[i] * i0, scaled[i], rows[i].coh, rows[i].inc,
               rows[i].coh + rows[i].inc});
  }
  return t;
}

CsvTable fig3c(int threads) {
  const double i_cr = two_level::critical_point(kStandard).i_cr;
  const auto scaled = log_grid(0.01, 20.0, 200);
  std::vector<double> intensities(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) intensities[i] = scaled[i] * i_cr;
  const two_level::TwoBeamSpec tb{kZeta * i_cr, 0.0};
  const auto curve = two_level::transmission_curve(kStandard, intensities, tb, threads);

  CsvTable t({"i_in", "i_over_icr", "t_lr", "t_rl", "delta_t"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    t.add_row({intensities[i], scaled[i], curve[i].t_lr, curve[i].t_rl, curve[i].delta_t});
  }
  return t;
}

CsvTable fig4(int threads) {
  ModelParams lossless2 = kLossless;
  ModelParams lossy2 = kStandard;
  const double i_cr0 = two_level::critical_point(lossless2).i_cr;
  const auto scaled = log_grid(0.01, 10.0, 160);

  CsvTable t({"i_in", "i_over_icr0", "dt_3la_lossless", "dt_3la_lossy", "dt_2la_lossless",
              "dt_2la_lossy"});
  struct Row {
    double d3l, d3y, d2l, d2y;
  };
  const auto rows = grid::map_parallel<Row>(scaled.size(), threads, [&](std::size_t i) {
    const double intensity = scaled[i] * i_cr0;
    Row r;
    r.d3l = three_level::transmission_3la(lossless2, kDriveLossless, intensity, Side::Left) -
            three_level::transmission_3la(lossless2, kDriveLossless, intensity, Side::Right);
    r.d3y = three_level::transmission_3la(lossy2, kDriveLossy, intensity, Side::Left) -
            three_level::transmission_3la(lossy2, kDriveLossy, intensity, Side::Right);
    r.d2l = two_level::nonreciprocity(lossless2, intensity).delta_t;
    r.d2y = two_level::nonreciprocity(lossy2, intensity).delta_t;
    return r;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t.add_row({scaled[i] * i_cr0, scaled[i], rows[i].d3l, rows[i].d3y, rows[i].d2l,
               rows[i].d2y});
  }
  return t;
}

CsvTable fig5(int threads) {
  const double i_cr0 = two_level::critical_point(kLossless).i_cr;
  const auto scaled = log_grid(0.01, 10.0, 160);

  CsvTable t({"i_in", "i_over_icr0", "delta_t_coh", "delta_t_inc", "delta_t"});
  struct Row {
    double coh, inc;
  };
  const auto rows = grid::map_parallel<Row>(scaled.size(), threads, [&](std::size_t i) {
    const double intensity = scaled[i] * i_cr0;
    const auto left =
        spectrum::transmission_split_3la(kLossless, kDriveLossless, intensity, Side::Left);
    const auto right =
        spectrum::transmission_split_3la(kLossless, kDriveLossless, intensity, Side::Right);
    return Row{left.t_coh - right.t_coh, left.t_inc - right.t_inc};
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t.add_row({scaled[i] * i_cr0, scaled[i], rows[i].coh, rows[i].inc,
               rows[i].coh + rows[i].inc});
  }
  return t;
}

}  // namespace

std::vector<std::string> figure_names() {
  return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4", "fig5"};
}

CsvTable make_figure(const std::string& name, int threads) {
  if (name == "fig2a") return fig2a(threads);
  if (name == "fig2b") return fig2b(threads);
  if (name == "fig2c") return fig2c(threads);
  if (name == "fig3a") return fig3a(threads);
  if (name == "fig3b") return fig3b(threads);
  if (name == "fig3c") return fig3c(threads);
  if (name == "fig4") return fig4(threads);
  if (name == "fig5") return fig5(threads);
  throw std::invalid_argument("unknown figure '" + name + "'");
}

}  // namespace isolator::run
