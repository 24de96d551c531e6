#include "isolator/three_level.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isolator/errors.hpp"
#include "isolator/grid.hpp"

namespace isolator::three_level {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kTinyIntensity = 1e-12;

// slot order: s1, s1*, s2, m1, m1*, m2, n, n*
constexpr std::size_t kSlotM2 = 5;

SteadyState3La wrap(numerics::ComplexVector m) {
  SteadyState3La ss;
  ss.m = std::move(m);
  return ss;
}

}  // namespace

RSystem build_r_system(const ModelParams& p, const DriveParams3& d3, const BeamDrive& beam) {
  const DerivedRates r = derive_rates(p, d3);
  if (beam.phase != 0.0) {
    throw std::invalid_argument("build_r_system: probe amplitude must be real (phase 0)");
  }
  const double om = beam.rabi;
  const double oc = d3.rabi_c;

  const Complex k1(-r.gamma_t, p.detuning_p);
  const Complex k2(-r.gamma_s, d3.detuning_c);
  const Complex k3(-d3.gamma_dephase_s, p.detuning_p - d3.detuning_c);

  RSystem sys;
  sys.r_matrix = numerics::ComplexMatrix(8);
  auto& a = sys.r_matrix;

  a(0, 0) = k1;
  a(0, 2) = 2.0 * kI * om;
  a(0, 5) = kI * om;
  a(0, 6) = -kI * oc;

  a(1, 1) = std::conj(k1);
  a(1, 2) = -2.0 * kI * om;
  a(1, 5) = -kI * om;
  a(1, 7) = kI * oc;

  a(2, 0) = kI * om;
  a(2, 1) = -kI * om;
  a(2, 2) = -2.0 * r.gamma_d;
  a(2, 3) = -kI * oc;
  a(2, 4) = kI * oc;

  a(3, 2) = -kI * oc;
  a(3, 3) = std::conj(k2);
  a(3, 5) = kI * oc;
  a(3, 6) = kI * om;

  a(4, 2) = kI * oc;
  a(4, 4) = k2;
  a(4, 5) = -kI * oc;
  a(4, 7) = -kI * om;

  a(5, 3) = kI * oc;
  a(5, 4) = -kI * oc;

  a(6, 0) = -kI * oc;
  a(6, 3) = kI * om;
  a(6, 6) = k3;

  a(7, 1) = kI * oc;
  a(7, 4) = -kI * om;
  a(7, 7) = std::conj(k3);

  sys.omega_m = numerics::ComplexVector(8, 0.0);
  sys.omega_m[0] = -kI * om;
  sys.omega_m[1] = kI * om;
  return sys;
}

double stability_horizon(const ModelParams& p, const DriveParams3& d3) {
  const DerivedRates r = derive_rates(p, d3);
  double min_rate = std::min(r.gamma_t, std::min(2.0 * r.gamma_d, r.gamma_s));
  if (d3.gamma_dephase_s > 0.0) min_rate = std::min(min_rate, d3.gamma_dephase_s);
  if (d3.rabi_c > 0.0) {
    // decay rate of the ground-|s> coherence once hybridized by the drive
    const double denom = r.gamma_s * r.gamma_s + d3.detuning_c * d3.detuning_c +
                         p.detuning_p * p.detuning_p;
    min_rate = std::min(min_rate, d3.rabi_c * d3.rabi_c * r.gamma_s / denom);
  }
  return 300.0 / min_rate;
}

SteadyState3La steady_state_3la(const RSystem& rsys) {
  return steady_state_3la(rsys, numerics::default_decay_horizon(rsys.r_matrix));
}

SteadyState3La steady_state_3la(const RSystem& rsys, double decay_horizon) {
  numerics::LinearSystemModel model{rsys.r_matrix, rsys.omega_m};
  return wrap(numerics::steady_state(model, decay_horizon));
}

namespace {

// 7x7 system with the conserved |s>-population row removed and m2 pinned to
// its initial value zero.
SteadyState3La solve_without_m2(const RSystem& rsys, double horizon) {
  numerics::LinearSystemModel reduced;
  reduced.drift = numerics::ComplexMatrix(7);
  reduced.inhomogeneity = numerics::ComplexVector(7, 0.0);
  std::size_t rr = 0;
  for (std::size_t r = 0; r < 8; ++r) {
    if (r == kSlotM2) continue;
    std::size_t cc = 0;
    for (std::size_t c = 0; c < 8; ++c) {
      if (c == kSlotM2) continue;
      reduced.drift(rr, cc) = rsys.r_matrix(r, c);
      ++cc;
    }
    reduced.inhomogeneity[rr] = rsys.omega_m[r];
    ++rr;
  }

  const numerics::ComplexVector x = numerics::steady_state(reduced, horizon);
  numerics::ComplexVector full(8, 0.0);
  std::size_t xi = 0;
  for (std::size_t r = 0; r < 8; ++r) {
    if (r == kSlotM2) continue;
    full[r] = x[xi++];
  }
  return wrap(std::move(full));
}

}  // namespace

SteadyState3La steady_state_3la(const ModelParams& p, const DriveParams3& d3,
                                const BeamDrive& beam) {
  const RSystem rsys = build_r_system(p, d3, beam);
  const double horizon = stability_horizon(p, d3);
  if (d3.rabi_c == 0.0) {
    if (d3.gamma_dephase_s <= 0.0) {
      throw SingularMatrixError(
          "steady_state_3la: undriven lossless |s> level traps population; "
          "steady state is not unique");
    }
    return solve_without_m2(rsys, horizon);
  }
  return steady_state_3la(rsys, horizon);
}

namespace {

double transmission_at(const ModelParams& p, const DriveParams3& d3, double intensity,
                       Side direction) {
  const BeamDrive beam = BeamDrive::from_intensity(p, direction, intensity);
  const SteadyState3La ss = steady_state_3la(p, d3, beam);
  const double gamma_out = p.coupling(opposite(direction));
  return 2.0 * gamma_out * ss.s2() / (group_velocity * intensity);
}

}  // namespace

double transmission_3la(const ModelParams& p, const DriveParams3& d3, double intensity,
                        Side direction) {
  p.validate();
  d3.validate();
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");
  if (intensity > 0.0) return transmission_at(p, d3, intensity, direction);

  const double t_tiny = transmission_at(p, d3, kTinyIntensity, direction);
  const double t_check = transmission_at(p, d3, 100.0 * kTinyIntensity, direction);
  const double scale = std::max(std::abs(t_tiny), 1e-300);
  if (std::abs(t_tiny - t_check) / scale > 1e-4) {
    throw std::runtime_error("transmission_3la: zero-intensity limit did not stabilize");
  }
  return t_tiny;
}

double transmission_lossless(const ModelParams& p, const DriveParams3& d3, double intensity,
                             Side direction) {
  p.validate();
  d3.validate();
  if (p.gamma_nonrad != 0.0 || p.gamma_dephase != 0.0 || d3.gamma_dephase_s != 0.0) {
    throw std::invalid_argument("transmission_lossless: requires a lossless atom");
  }
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");

  const double gamma_in = p.coupling(direction);
  const double om2 = 2.0 * gamma_in * group_velocity * intensity;
  const double oc2 = d3.rabi_c * d3.rabi_c;
  const double delta = p.detuning_p - d3.detuning_c;
  const double sum = p.gamma_l + p.gamma_r;
  const double denom = sum * sum * delta * delta +
                       (oc2 - p.detuning_p * delta) * (oc2 - p.detuning_p * delta) +
                       2.0 * (oc2 + delta * delta) * om2 + om2 * om2;
  return 4.0 * p.gamma_l * p.gamma_r * delta * delta / denom;
}

NrCurve3La nonreciprocity_3la(const ModelParams& p, const DriveParams3& d3,
                              std::span<const double> intensity_grid, int threads) {
  p.validate();
  d3.validate();
  for (double i : intensity_grid) {
    if (i < 0.0 || !std::isfinite(i)) {
      throw std::invalid_argument("intensity grid values must be >= 0 and finite");
    }
  }

  auto delta_t_at = [&](double intensity) {
    return transmission_3la(p, d3, intensity, Side::Left) -
           transmission_3la(p, d3, intensity, Side::Right);
  };

  NrCurve3La out;
  out.curve = grid::map_parallel<two_level::NonreciprocityResult>(
      intensity_grid.size(), threads, [&](std::size_t idx) {
        const double intensity = intensity_grid[idx];
        two_level::NonreciprocityResult nr;
        if (p.gamma_l == p.gamma_r) {
          nr.t_lr = nr.t_rl = transmission_3la(p, d3, intensity, Side::Left);
          return nr;  // symmetric couplings are exactly reciprocal
        }
        nr.t_lr = transmission_3la(p, d3, intensity, Side::Left);
        nr.t_rl = transmission_3la(p, d3, intensity, Side::Right);
        nr.delta_t = nr.t_lr - nr.t_rl;
        const double mean = nr.t_lr + nr.t_rl;
        nr.delta_t_normalized = mean != 0.0 ? 2.0 * nr.delta_t / mean : 0.0;
        return nr;
      });

  if (out.curve.empty()) return out;

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.curve.size(); ++i) {
    if (out.curve[i].delta_t > out.curve[best].delta_t) best = i;
  }

  const double lo = intensity_grid[best > 0 ? best - 1 : best];
  const double hi = intensity_grid[std::min(best + 1, intensity_grid.size() - 1)];
  if (hi > lo) {
    const auto refined =
        numerics::maximize_scalar(delta_t_at, lo, hi, 1e-10 * std::max(hi - lo, 1e-30));
    out.max_delta_t = refined.value;
    out.argmax_intensity = refined.x;
  } else {
    out.max_delta_t = out.curve[best].delta_t;
    out.argmax_intensity = intensity_grid[best];
  }
  return out;
}

}  // namespace isolator::three_level
