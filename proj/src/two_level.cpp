#include "isolator/two_level.hpp"

#include <cmath>
#include <stdexcept>

#include "isolator/errors.hpp"
#include "isolator/grid.hpp"

namespace isolator::two_level {

namespace {

constexpr Complex kI(0.0, 1.0);

double norm2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

}  // namespace

numerics::LinearSystemModel mean_field_system(const ModelParams& p, Complex effective_rabi) {
  const DerivedRates r = derive_rates(p);
  const Complex om = effective_rabi;

  numerics::LinearSystemModel model;
  model.drift = numerics::ComplexMatrix(3);
  auto& a = model.drift;
  a(0, 0) = Complex(-r.gamma_t, p.detuning_p);
  a(0, 2) = 2.0 * kI * om;
  a(1, 1) = Complex(-r.gamma_t, -p.detuning_p);
  a(1, 2) = -2.0 * kI * std::conj(om);
  a(2, 0) = kI * std::conj(om);
  a(2, 1) = -kI * om;
  a(2, 2) = -2.0 * r.gamma_d;
  model.inhomogeneity = {-kI * om, kI * std::conj(om), 0.0};
  return model;
}

SteadyState2La steady_state_effective(const ModelParams& p, Complex effective_rabi) {
  const DerivedRates r = derive_rates(p);
  const double om2 = norm2(effective_rabi);
  const double lambda = r.xi + 2.0 * r.gamma_t * om2;

  SteadyState2La ss;
  ss.lambda_side = lambda;
  ss.s1 = -kI * effective_rabi * Complex(r.gamma_t, p.detuning_p) * r.gamma_d / lambda;
  ss.s2 = r.gamma_t * om2 / lambda;
  return ss;
}

SteadyState2La steady_state_2la(const ModelParams& p, const BeamDrive& beam) {
  return steady_state_effective(p, beam.amplitude());
}

PortCurrents port_currents(const ModelParams& p, const BeamDrive& beam,
                           const SteadyState2La& ss) {
  p.validate();
  const double gamma_in = p.coupling(beam.side);
  const double gamma_out = p.coupling(opposite(beam.side));
  const Complex om_in = beam.amplitude();

  PortCurrents pc;
  pc.j_pa = -2.0 * (std::imag(std::conj(om_in) * ss.s1) + gamma_in * ss.s2);
  pc.j_pb = 2.0 * gamma_out * ss.s2;
  pc.j_pd = 2.0 * p.gamma_nonrad * ss.s2;

  if (beam.intensity > 0.0) {
    const double flux = group_velocity * beam.intensity;
    pc.transmission = pc.j_pb / flux;
    pc.reflection = 1.0 - pc.j_pa / flux;
    pc.loss = pc.j_pd / flux;
  } else {
    pc.reflection = 1.0;  // zero drive reflects trivially
  }
  return pc;
}

namespace {

// T_{in->out} = 4 gamma_t gamma_in gamma_out / (xi + 4 gamma_t gamma_in I)
double transmission_closed(const DerivedRates& r, double gamma_in, double gamma_out,
                           double intensity) {
  const double om2 = 2.0 * gamma_in * group_velocity * intensity;
  return 4.0 * r.gamma_t * gamma_in * gamma_out / (r.xi + 2.0 * r.gamma_t * om2);
}

NonreciprocityResult make_nr(double t_lr, double t_rl) {
  NonreciprocityResult nr;
  nr.t_lr = t_lr;
  nr.t_rl = t_rl;
  nr.delta_t = t_lr - t_rl;
  const double mean = t_lr + t_rl;
  nr.delta_t_normalized = mean != 0.0 ? 2.0 * nr.delta_t / mean : 0.0;
  return nr;
}

}  // namespace

NonreciprocityResult nonreciprocity(const ModelParams& p, double intensity) {
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");
  const DerivedRates r = derive_rates(p);
  if (p.gamma_l == p.gamma_r) {
    const double t = transmission_closed(r, p.gamma_l, p.gamma_r, intensity);
    return make_nr(t, t);  // symmetric couplings: exactly reciprocal
  }
  return make_nr(transmission_closed(r, p.gamma_l, p.gamma_r, intensity),
                 transmission_closed(r, p.gamma_r, p.gamma_l, intensity));
}

CriticalPoint critical_point(const ModelParams& p) {
  const DerivedRates r = derive_rates(p);
  const double root_glgr = std::sqrt(p.gamma_l * p.gamma_r);

  CriticalPoint cp;
  cp.i_cr = r.xi / (4.0 * group_velocity * r.gamma_t * root_glgr);
  cp.delta_t_cr = 4.0 * r.gamma_t * p.gamma_l * p.gamma_r * (p.gamma_r - p.gamma_l) /
                  (r.xi * (p.gamma_r + p.gamma_l + 2.0 * root_glgr));
  return cp;
}

std::vector<std::pair<double, double>> sweep_delta_t_cr_vs_gamma_r(
    const ModelParams& p, std::span<const double> gamma_r_grid) {
  p.validate();
  std::vector<std::pair<double, double>> out;
  out.reserve(gamma_r_grid.size());
  for (double gr : gamma_r_grid) {
    if (!(gr > 0.0)) throw std::invalid_argument("gamma_r grid values must be > 0");
    ModelParams q = p;
    q.gamma_r = gr;
    out.emplace_back(gr, critical_point(q).delta_t_cr);
  }
  return out;
}

TwoBeamResult two_beam(const ModelParams& p, const BeamDrive& forward,
                       const BeamDrive& backward, double backward_detuning_offset) {
  p.validate();
  if (forward.side == backward.side) {
    throw std::invalid_argument("two_beam: beams must enter from opposite sides");
  }
  if (backward_detuning_offset != 0.0) {
    throw UnsupportedError("two_beam: backward light must overlap the probe frequency");
  }

  const double total_intensity = forward.intensity + backward.intensity;
  const double gamma_in = p.coupling(forward.side);
  const double gamma_out = p.coupling(backward.side);
  const Complex om_f = forward.amplitude();
  const Complex om_b = backward.amplitude();

  TwoBeamResult res;
  res.state = steady_state_effective(p, om_f + om_b);

  // Each port current mixes the beam amplitude present at that port with the
  // dipole; the one-beam limits reproduce the single-beam current formulas.
  PortCurrents pc;
  pc.j_pa = -2.0 * (std::imag(std::conj(om_f) * res.state.s1) + gamma_in * res.state.s2);
  pc.j_pb = 2.0 * (std::imag(std::conj(om_b) * res.state.s1) + gamma_out * res.state.s2);
  pc.j_pd = 2.0 * p.gamma_nonrad * res.state.s2;
  if (total_intensity > 0.0) {
    const double flux = group_velocity * total_intensity;
    pc.transmission = pc.j_pb / flux;
    pc.reflection = 1.0 - pc.j_pa / flux;
    pc.loss = pc.j_pd / flux;
  } else {
    pc.reflection = 1.0;
  }
  res.currents = pc;

  // Reversed direction: swap the couplings, keep the forward beam carrying
  // I_in and the backward beam carrying I_b.
  const ModelParams swapped = p.swapped();
  const BeamDrive fwd_sw =
      BeamDrive::from_intensity(swapped, forward.side, forward.intensity, forward.phase);
  const BeamDrive bwd_sw =
      BeamDrive::from_intensity(swapped, backward.side, backward.intensity, backward.phase);
  const SteadyState2La ss_sw = steady_state_effective(swapped, fwd_sw.amplitude() + bwd_sw.amplitude());
  const double gamma_out_sw = swapped.coupling(backward.side);
  const double j_out_sw =
      2.0 * (std::imag(std::conj(bwd_sw.amplitude()) * ss_sw.s1) + gamma_out_sw * ss_sw.s2);

  const double t_lr = total_intensity > 0.0 ? pc.j_pb / (group_velocity * total_intensity) : 0.0;
  const double t_rl =
      total_intensity > 0.0 ? j_out_sw / (group_velocity * total_intensity) : 0.0;
  res.nr = make_nr(t_lr, t_rl);
  return res;
}

std::vector<NonreciprocityResult> transmission_curve(
    const ModelParams& p, std::span<const double> intensity_grid,
    const std::optional<TwoBeamSpec>& two_beam_spec, int threads) {
  p.validate();
  for (double i : intensity_grid) {
    if (i < 0.0 || !std::isfinite(i)) {
      throw std::invalid_argument("intensity grid values must be >= 0 and finite");
    }
  }

  auto eval = [&](std::size_t idx) {
    const double intensity = intensity_grid[idx];
    if (!two_beam_spec) return nonreciprocity(p, intensity);
    const BeamDrive fwd = BeamDrive::from_intensity(p, Side::Left, intensity);
    const BeamDrive bwd = BeamDrive::from_intensity(
        p, Side::Right, two_beam_spec->backward_intensity, two_beam_spec->backward_phase);
    return two_beam(p, fwd, bwd).nr;
  };

  return grid::map_parallel<NonreciprocityResult>(intensity_grid.size(), threads, eval);
}

}  // namespace isolator::two_level
