#include "isolator/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "isolator/errors.hpp"
#include "isolator/grid.hpp"
#include "isolator/two_level.hpp"

namespace isolator::spectrum {

namespace {

double norm2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

double lambda_of(const DerivedRates& r, double gamma_in, double intensity) {
  return r.xi + 4.0 * r.gamma_t * gamma_in * group_velocity * intensity;
}

}  // namespace

std::vector<double> default_omega_grid(const ModelParams& p) {
  const DerivedRates r = derive_rates(p);
  grid::GridSpec spec;
  spec.min = -20.0 * r.gamma_t;
  spec.max = 20.0 * r.gamma_t;
  spec.count = 2001;
  return grid::make_grid(spec);
}

CorrelatorSystem build_correlator_system_2la(const ModelParams& p, const BeamDrive& beam) {
  const DerivedRates r = derive_rates(p);
  const two_level::SteadyState2La ss = two_level::steady_state_2la(p, beam);
  const numerics::LinearSystemModel model = two_level::mean_field_system(p, beam.amplitude());
  const Complex s1c = std::conj(ss.s1);

  CorrelatorSystem cs;
  cs.drift = model.drift;
  cs.inhomogeneity = model.inhomogeneity;
  for (Complex& c : cs.inhomogeneity) c *= s1c;
  cs.asymptotic = {norm2(ss.s1), s1c * s1c, s1c * ss.s2};
  cs.initial = {ss.s2 - norm2(ss.s1), -s1c * s1c, -s1c * ss.s2};
  cs.emission_row = 0;
  cs.gamma_out = p.coupling(opposite(beam.side));
  cs.decay_horizon = 100.0 / std::min(r.gamma_t, 2.0 * r.gamma_d);
  cs.feature_scale = r.gamma_t + 2.0 * beam.rabi + std::abs(p.detuning_p);
  return cs;
}

CorrelatorSystem build_correlator_system_3la(const ModelParams& p, const DriveParams3& d3,
                                             const BeamDrive& beam) {
  const DerivedRates r = derive_rates(p, d3);
  const three_level::SteadyState3La ss = three_level::steady_state_3la(p, d3, beam);
  const three_level::RSystem rsys = three_level::build_r_system(p, d3, beam);
  const Complex s1c = std::conj(ss.s1());

  // equal-time products of the level operators leave exactly two nonzero
  // slots: the population slot and the sigma^dag nu^dag (= mu) slot
  numerics::ComplexVector raw(8, 0.0);
  raw[0] = ss.s2();
  raw[6] = ss.m1();

  CorrelatorSystem cs;
  cs.emission_row = 0;
  cs.gamma_out = p.coupling(opposite(beam.side));
  cs.decay_horizon = three_level::stability_horizon(p, d3);
  cs.feature_scale = r.gamma_t + 2.0 * beam.rabi + 2.0 * d3.rabi_c +
                     std::abs(p.detuning_p) + std::abs(d3.detuning_c);

  if (d3.rabi_c == 0.0) {
    // |s> manifold pinned at zero population; regression runs on the reduced
    // system so the drift decays (the full matrix has a conserved row)
    numerics::ComplexVector inhom_full = rsys.omega_m;
    for (Complex& c : inhom_full) c *= s1c;
    numerics::ComplexVector asym_full = ss.m;
    for (Complex& c : asym_full) c *= s1c;

    cs.drift = numerics::ComplexMatrix(7);
    cs.inhomogeneity = numerics::ComplexVector(7);
    cs.initial = numerics::ComplexVector(7);
    cs.asymptotic = numerics::ComplexVector(7);
    std::size_t rr = 0;
    for (std::size_t row = 0; row < 8; ++row) {
      if (row == 5) continue;
      std::size_t cc = 0;
      for (std::size_t col = 0; col < 8; ++col) {
        if (col == 5) continue;
        cs.drift(rr, cc) = rsys.r_matrix(row, col);
        ++cc;
      }
      cs.inhomogeneity[rr] = inhom_full[row];
      cs.asymptotic[rr] = asym_full[row];
      cs.initial[rr] = raw[row] - asym_full[row];
      ++rr;
    }
    return cs;
  }

  cs.drift = rsys.r_matrix;
  cs.inhomogeneity = rsys.omega_m;
  for (Complex& c : cs.inhomogeneity) c *= s1c;
  cs.asymptotic = ss.m;
  for (Complex& c : cs.asymptotic) c *= s1c;
  cs.initial = numerics::ComplexVector(8);
  for (std::size_t i = 0; i < 8; ++i) cs.initial[i] = raw[i] - cs.asymptotic[i];
  return cs;
}

double coherent_transmission(const ModelParams& p, double intensity, Side direction) {
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");
  const DerivedRates r = derive_rates(p);
  const double gamma_in = p.coupling(direction);
  const double gamma_out = p.coupling(opposite(direction));
  const double lambda = lambda_of(r, gamma_in, intensity);
  return 4.0 * gamma_in * gamma_out * r.gamma_d * r.xi / (lambda * lambda);
}

CoherentSplit transmission_split_3la(const ModelParams& p, const DriveParams3& d3,
                                     double intensity, Side direction) {
  if (!(intensity > 0.0)) {
    throw std::invalid_argument("transmission_split_3la: intensity must be > 0");
  }
  const BeamDrive beam = BeamDrive::from_intensity(p, direction, intensity);
  const three_level::SteadyState3La ss = three_level::steady_state_3la(p, d3, beam);
  const double gamma_out = p.coupling(opposite(direction));
  const double flux = group_velocity * intensity;

  CoherentSplit split;
  split.t_coh = 2.0 * gamma_out * norm2(ss.s1()) / flux;
  split.total = 2.0 * gamma_out * ss.s2() / flux;
  split.t_inc = split.total - split.t_coh;
  return split;
}

namespace {

// P_inc at an offset from the probe frequency: one-sided Fourier transform of
// the shifted correlator through the resolvent of the drift.
double incoherent_density_at(const CorrelatorSystem& cs, double delta_omega) {
  const Complex ft =
      numerics::resolvent_component(cs.drift, cs.initial, delta_omega, cs.emission_row);
  return (2.0 * cs.gamma_out / (std::numbers::pi * group_velocity)) * ft.real();
}

// Whole-line integral of the incoherent density via the substitution
// omega = scale * tan(theta); the transformed integrand is bounded.
double incoherent_total_power(const CorrelatorSystem& cs, double tol) {
  const double s = cs.feature_scale;
  auto g = [&](double theta) {
    const double t = std::tan(theta);
    const double sec2 = 1.0 + t * t;
    return incoherent_density_at(cs, s * t) * s * sec2;
  };
  const double half = std::numbers::pi / 2.0 - 1e-9;
  return numerics::integrate_adaptive(g, -half, half, tol);
}

SpectrumDecomposition decompose(const CorrelatorSystem& cs, double intensity,
                                std::span<const double> omega_grid, int threads) {
  if (!numerics::decay_check(cs.drift, numerics::generic_probe(cs.drift.dim()),
                             cs.decay_horizon)) {
    throw UnstableSystemError("spectrum: correlator drift has a non-decaying mode");
  }

  SpectrumDecomposition out;
  const double coh = std::abs(cs.asymptotic.empty() ? 0.0 : cs.asymptotic[cs.emission_row].real());
  out.coherent_weight = 2.0 * cs.gamma_out * coh / group_velocity;

  const std::vector<double> density = grid::map_parallel<double>(
      omega_grid.size(), threads,
      [&](std::size_t i) { return incoherent_density_at(cs, omega_grid[i]); });
  out.incoherent_density.reserve(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    out.incoherent_density.emplace_back(omega_grid[i], density[i]);
  }

  const double inc_scale = std::abs(cs.initial[cs.emission_row].real());
  const double tol = std::max(1e-8 * 2.0 * cs.gamma_out * inc_scale, 1e-16);
  const double total_inc = incoherent_total_power(cs, tol);

  const double flux = group_velocity * intensity;
  out.t_coh = out.coherent_weight / flux;
  out.t_inc = total_inc / flux;
  return out;
}

}  // namespace

SpectrumDecomposition incoherent_spectrum(const ModelParams& p, const BeamDrive& beam,
                                          std::span<const double> omega_grid, int threads) {
  p.validate();
  if (beam.intensity == 0.0) {
    // no drive: empty spectrum with the analytic zero-intensity coefficients
    SpectrumDecomposition out;
    out.incoherent_density.reserve(omega_grid.size());
    for (double w : omega_grid) out.incoherent_density.emplace_back(w, 0.0);
    const DerivedRates r = derive_rates(p);
    const double gamma_in = p.coupling(beam.side);
    const double gamma_out = p.coupling(opposite(beam.side));
    out.t_coh = 4.0 * gamma_in * gamma_out * r.gamma_d / (r.xi);
    out.t_inc = 4.0 * gamma_in * gamma_out * p.gamma_dephase / r.xi;
    return out;
  }
  const CorrelatorSystem cs = build_correlator_system_2la(p, beam);
  return decompose(cs, beam.intensity, omega_grid, threads);
}

SpectrumDecomposition spectrum_3la(const ModelParams& p, const DriveParams3& d3,
                                   const BeamDrive& beam,
                                   std::span<const double> omega_grid, int threads) {
  p.validate();
  d3.validate();
  if (beam.intensity == 0.0) {
    throw std::invalid_argument("spectrum_3la: intensity must be > 0");
  }
  const CorrelatorSystem cs = build_correlator_system_3la(p, d3, beam);
  return decompose(cs, beam.intensity, omega_grid, threads);
}

NrDecomposition nonreciprocity_decomposition(const ModelParams& p, double intensity) {
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");
  const DerivedRates r = derive_rates(p);

  NrDecomposition out;
  const double rho1 = r.xi * p.gamma_dephase * (p.gamma_r + p.gamma_l) /
                      (4.0 * r.gamma_t * r.gamma_t * p.gamma_r * p.gamma_l);
  const double rho2 = r.xi * r.xi *
                      (p.gamma_dephase * p.gamma_dephase - r.gamma_d * r.gamma_d) /
                      (4.0 * r.gamma_t * r.gamma_t * r.gamma_t * r.gamma_t * p.gamma_r *
                       p.gamma_l);
  const double disc = rho1 * rho1 - rho2;
  out.i_zero = disc >= 0.0
                   ? (-rho1 + std::sqrt(disc)) / (2.0 * group_velocity)
                   : std::numeric_limits<double>::quiet_NaN();

  if (p.gamma_l == p.gamma_r) return out;  // exactly reciprocal, both parts zero

  const double ll = lambda_of(r, p.gamma_l, intensity);
  const double lr = lambda_of(r, p.gamma_r, intensity);
  const double inv2_diff = 1.0 / (ll * ll) - 1.0 / (lr * lr);
  const double oml2 = 2.0 * p.gamma_l * group_velocity * intensity;
  const double omr2 = 2.0 * p.gamma_r * group_velocity * intensity;

  out.delta_t_coh = 4.0 * p.gamma_l * p.gamma_r * r.gamma_d * r.xi * inv2_diff;
  out.delta_t_inc =
      4.0 * p.gamma_l * p.gamma_r *
      (p.gamma_dephase * r.xi * inv2_diff +
       2.0 * r.gamma_t * r.gamma_t * (oml2 / (ll * ll) - omr2 / (lr * lr)));
  return out;
}

}  // namespace isolator::spectrum
