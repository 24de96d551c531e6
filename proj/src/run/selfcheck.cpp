#include "run/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "isolator/grid.hpp"
#include "isolator/spectrum.hpp"
#include "isolator/three_level.hpp"
#include "isolator/two_level.hpp"

namespace isolator::run {

namespace {

struct Reporter {
  std::ostream& os;
  int failures = 0;

  void check(const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    os << (ok ? "[ok]   " : "[FAIL] ") << name << detail << "\n";
    if (!ok) ++failures;
  }
};

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coupling(0.01, 0.15);
  std::uniform_real_distribution<double> loss(0.0, 0.01);
  std::uniform_real_distribution<double> detuning(-0.05, 0.05);
  ModelParams p;
  p.gamma_l = coupling(rng);
  p.gamma_r = coupling(rng);
  p.gamma_nonrad = loss(rng);
  p.gamma_dephase = loss(rng);
  p.detuning_p = detuning(rng);
  return p;
}

const ModelParams kStandard{0.03, 0.1, 0.003, 0.003, 0.0};

}  // namespace

int run_selfcheck(std::ostream& os) {
  Reporter rep{os};
  std::mt19937_64 rng(0x5eed5eedULL);

  rep.check("derived-rate identities", [&] {
    for (int i = 0; i < 50; ++i) {
      const ModelParams p = random_params(rng);
      const DriveParams3 d3{0.01, 0.02, 0.001};
      const DerivedRates r = derive_rates(p, d3);
      if (r.gamma_t - r.gamma_d != p.gamma_dephase) return false;
      if (r.gamma_s - r.gamma_t != d3.gamma_dephase_s) return false;
      const double i_in = 0.05;
      const double round_trip = intensity_from_rabi(p.gamma_l, rabi_from_intensity(p.gamma_l, i_in));
      if (std::abs(round_trip - i_in) > 1e-15 * i_in) return false;
    }
    return true;
  });

  rep.check("linear solve residual", [&] {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = trial % 2 == 0 ? 3 : 8;
      numerics::ComplexMatrix a(n);
      numerics::ComplexVector b(n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = Complex(u(rng), u(rng));
        a(r, r) += Complex(4.0, 0.0);  // keep it comfortably nonsingular
        b[r] = Complex(u(rng), u(rng));
      }
      const auto x = numerics::solve_linear(a, b);
      const auto ax = a.apply(x);
      double res = 0.0, bn = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        res = std::max(res, std::abs(ax[r] - b[r]));
        bn = std::max(bn, std::abs(b[r]));
      }
      if (res > 1e-10 * bn) return false;
    }
    return true;
  });

  rep.check("current conservation and coefficient bounds (2LA)", [&] {
    std::uniform_real_distribution<double> ui(0.0, 0.5);
    for (int i = 0; i < 100; ++i) {
      const ModelParams p = random_params(rng);
      for (Side side : {Side::Left, Side::Right}) {
        const BeamDrive beam = BeamDrive::from_intensity(p, side, ui(rng));
        const auto ss = two_level::steady_state_2la(p, beam);
        const auto pc = two_level::port_currents(p, beam, ss);
        const double scale = std::max({std::abs(pc.j_pa), std::abs(pc.j_pb), 1e-300});
        if (std::abs(pc.j_pa - pc.j_pb - pc.j_pd) > 1e-12 * scale) return false;
        if (beam.intensity > 0.0) {
          if (pc.transmission < 0.0 || pc.transmission > 1.0) return false;
          if (pc.reflection < 0.0 || pc.reflection > 1.0) return false;
          if (pc.loss < 0.0 || pc.loss > 1.0) return false;
          if (std::abs(pc.transmission + pc.reflection + pc.loss - 1.0) > 1e-12) return false;
        }
      }
    }
    return true;
  });

  rep.check("steady state matches time integration (2LA)", [&] {
    std::uniform_real_distribution<double> ui(1e-4, 0.3);
    for (int i = 0; i < 3; ++i) {
      const ModelParams p = random_params(rng);
      const BeamDrive beam = BeamDrive::from_intensity(p, Side::Left, ui(rng));
      const DerivedRates r = derive_rates(p);
      const auto model = two_level::mean_field_system(p, beam.amplitude());
      const auto traj = numerics::integrate_linear_ivp(model, numerics::ComplexVector(3, 0.0),
                                                       150.0 / r.gamma_t, 0.01 / r.gamma_t);
      const auto ss = two_level::steady_state_2la(p, beam);
      const auto& last = traj.back().x;
      if (std::abs(last[0] - ss.s1) > 1e-8) return false;
      if (std::abs(last[2].real() - ss.s2) > 1e-8) return false;
    }
    return true;
  });

  rep.check("critical point agrees with numeric argmax", [&] {
    const auto cp = two_level::critical_point(kStandard);
    const auto num = numerics::maximize_scalar(
        [&](double i) { return two_level::nonreciprocity(kStandard, i).delta_t; }, 0.0,
        10.0 * cp.i_cr, 1e-9 * cp.i_cr);
    return std::abs(num.x - cp.i_cr) <= 1e-6 * cp.i_cr;
  });

  rep.check("coherent + incoherent split adds up (2LA)", [&] {
    for (int i = 0; i < 50; ++i) {
      const ModelParams p = random_params(rng);
      std::uniform_real_distribution<double> ui(0.0, 0.5);
      const double intensity = ui(rng);
      const auto nr = two_level::nonreciprocity(p, intensity);
      const auto dec = spectrum::nonreciprocity_decomposition(p, intensity);
      if (std::abs(dec.delta_t_coh + dec.delta_t_inc - nr.delta_t) > 1e-12) return false;
      const double t_coh = spectrum::coherent_transmission(p, intensity, Side::Left);
      const DerivedRates r = derive_rates(p);
      const double om2 = 2.0 * p.gamma_l * intensity;
      const double lam = r.xi + 2.0 * r.gamma_t * om2;
      const double t_inc_closed = 4.0 * p.gamma_l * p.gamma_r *
                                  (p.gamma_dephase * r.xi + 2.0 * r.gamma_t * r.gamma_t * om2) /
                                  (lam * lam);
      if (std::abs(nr.t_lr - t_coh - t_inc_closed) > 1e-12) return false;
    }
    return true;
  });

  rep.check("regression consistency (2LA correlators)", [&] {
    const BeamDrive beam =
        BeamDrive::from_intensity(kStandard, Side::Left, two_level::critical_point(kStandard).i_cr);
    const auto cs = spectrum::build_correlator_system_2la(kStandard, beam);
    numerics::ComplexVector negated = cs.inhomogeneity;
    for (auto& c : negated) c = -c;
    const auto x = numerics::solve_linear(cs.drift, negated);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(x[i] - cs.asymptotic[i]) > 1e-10) return false;
    }
    return true;
  });

  rep.check("spectrum normalization (2LA, quadrature)", [&] {
    const double i_cr = two_level::critical_point(kStandard).i_cr;
    const BeamDrive beam = BeamDrive::from_intensity(kStandard, Side::Left, i_cr);
    const std::vector<double> omega = {0.0};
    const auto dec = spectrum::incoherent_spectrum(kStandard, beam, omega);
    const auto ss = two_level::steady_state_2la(kStandard, beam);
    const double expected = 2.0 * kStandard.gamma_r * ss.s2 / i_cr;
    return std::abs(dec.t_coh + dec.t_inc - expected) <= 1e-6 * expected;
  });

  rep.check("lossless closed form matches matrix solve (3LA)", [&] {
    const ModelParams p{0.03, 0.1, 0.0, 0.0, 0.0};
    const DriveParams3 d3{0.01, 0.02, 0.0};
    for (double intensity : {1e-4, 1e-3, 0.02, 0.1}) {
      for (Side s : {Side::Left, Side::Right}) {
        const double closed = three_level::transmission_lossless(p, d3, intensity, s);
        const double solved = three_level::transmission_3la(p, d3, intensity, s);
        if (std::abs(closed - solved) > 1e-12) return false;
      }
    }
    return true;
  });

  rep.check("EIT transparency point (3LA)", [&] {
    const ModelParams p{0.03, 0.1, 0.0, 0.0, 0.02};
    const DriveParams3 d3{0.01, 0.02, 0.0};
    return std::abs(three_level::transmission_3la(p, d3, 0.01, Side::Left)) <= 1e-12;
  });

  rep.check("steady-state structure (3LA)", [&] {
    const DriveParams3 d3{0.01, 0.02, 0.001};
    for (int i = 0; i < 10; ++i) {
      const ModelParams p = random_params(rng);
      std::uniform_real_distribution<double> ui(1e-4, 0.1);
      const BeamDrive beam = BeamDrive::from_intensity(p, Side::Left, ui(rng));
      const auto ss = three_level::steady_state_3la(p, d3, beam);
      if (std::abs(ss.m[1] - std::conj(ss.m[0])) > 1e-12) return false;
      if (std::abs(ss.m[4] - std::conj(ss.m[3])) > 1e-12) return false;
      if (std::abs(ss.m[7] - std::conj(ss.m[6])) > 1e-12) return false;
      if (std::abs(ss.m[3].imag()) > 1e-12) return false;
      if (std::abs(ss.m[2].imag()) > 1e-12 || std::abs(ss.m[5].imag()) > 1e-12) return false;
      if (ss.s2() < 0.0 || ss.m2() < 0.0 || ss.s2() + ss.m2() > 1.0) return false;
    }
    return true;
  });

  rep.check("two-beam reduction to a single beam", [&] {
    const BeamDrive fwd = BeamDrive::from_intensity(kStandard, Side::Left, 0.05);
    const BeamDrive bwd = BeamDrive::from_intensity(kStandard, Side::Right, 0.0);
    const auto tb = two_level::two_beam(kStandard, fwd, bwd);
    const auto nr = two_level::nonreciprocity(kStandard, 0.05);
    const double denom = 0.05;
    const auto ss = two_level::steady_state_2la(kStandard, fwd);
    const auto pc = two_level::port_currents(kStandard, fwd, ss);
    (void)denom;
    return std::abs(tb.nr.t_lr - nr.t_lr) <= 1e-15 &&
           std::abs(tb.currents.j_pb - pc.j_pb) <= 1e-15;
  });

  rep.check("parallel kernel matches serial reference bit for bit", [&] {
    const auto grid_values = grid::make_grid({1e-4, 0.5, 64, grid::Scale::Log});
    const auto serial =
        two_level::transmission_curve(kStandard, grid_values, std::nullopt, 1);
    const auto parallel =
        two_level::transmission_curve(kStandard, grid_values, std::nullopt, 4);
    for (std::size_t i = 0; i < serial.size(); ++i) {
      if (serial[i].t_lr != parallel[i].t_lr) return false;
      if (serial[i].delta_t != parallel[i].delta_t) return false;
    }
    return true;
  });

  os << (rep.failures == 0 ? "selfcheck: all checks passed\n"
                           : "selfcheck: " + std::to_string(rep.failures) + " check(s) FAILED\n");
  return rep.failures;
}

}  // namespace isolator::run
