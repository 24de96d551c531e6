#ifndef ISOLATOR_TWO_LEVEL_HPP
#define ISOLATOR_TWO_LEVEL_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "isolator/numerics.hpp"
#include "isolator/params.hpp"

namespace isolator::two_level {

// Steady state of the driven two-level atom in the frame rotating at the
// probe frequency.
struct SteadyState2La {
  Complex s1;                // dipole amplitude <sigma>
  double s2 = 0.0;           // excited population <sigma^dag sigma>
  double lambda_side = 0.0;  // xi + 2 * gamma_t * |omega|^2 of the driving side
};

// Steady photon currents and the coefficients they normalize to. For a single
// beam all three coefficients lie in [0, 1] and sum to 1; with two beams they
// follow the net-flux convention and transmission can be negative.
struct PortCurrents {
  double j_pa = 0.0;  // current at the input side, positive toward the atom
  double j_pb = 0.0;  // current at the output side, positive away from the atom
  double j_pd = 0.0;  // nonradiative loss current
  double transmission = 0.0;
  double reflection = 0.0;
  double loss = 0.0;
};

struct NonreciprocityResult {
  double t_lr = 0.0;
  double t_rl = 0.0;
  double delta_t = 0.0;             // t_lr - t_rl
  double delta_t_normalized = 0.0;  // 2 * delta_t / (t_lr + t_rl), 0 at zero drive
};

// Mean-field equations of motion for the dipole/population vector
// (s1, s1*, s2) under a possibly complex effective drive amplitude. This is
// the system every 2LA closed form is checked against.
numerics::LinearSystemModel mean_field_system(const ModelParams& p, Complex effective_rabi);

SteadyState2La steady_state_2la(const ModelParams& p, const BeamDrive& beam);

// Closed-form steady state for a given effective drive amplitude (the two-beam
// case feeds the summed amplitude through here).
SteadyState2La steady_state_effective(const ModelParams& p, Complex effective_rabi);

PortCurrents port_currents(const ModelParams& p, const BeamDrive& beam,
                           const SteadyState2La& ss);

// Transmission both ways at the given input intensity plus their difference.
NonreciprocityResult nonreciprocity(const ModelParams& p, double intensity);

struct CriticalPoint {
  double i_cr = 0.0;        // intensity of maximum nonreciprocity
  double delta_t_cr = 0.0;  // nonreciprocity at that intensity
};

CriticalPoint critical_point(const ModelParams& p);

// Critical nonreciprocity as a function of the right coupling with everything
// else held fixed.
std::vector<std::pair<double, double>> sweep_delta_t_cr_vs_gamma_r(
    const ModelParams& p, std::span<const double> gamma_r_grid);

struct TwoBeamResult {
  SteadyState2La state;
  PortCurrents currents;
  NonreciprocityResult nr;
};

// Forward and backward beams of the same frequency. Currents at each port mix
// the local beam amplitude with the atomic dipole; transmission is normalized
// by the total intensity. `backward_detuning_offset` exists to reject the
// spectrally non-overlapping case, which this model does not cover.
TwoBeamResult two_beam(const ModelParams& p, const BeamDrive& forward,
                       const BeamDrive& backward, double backward_detuning_offset = 0.0);

struct TwoBeamSpec {
  double backward_intensity = 0.0;
  double backward_phase = 0.0;
};

// Nonreciprocity across an intensity grid, single- or two-beam. Grid points
// are independent; `threads` > 1 evaluates them with the parallel kernel.
std::vector<NonreciprocityResult> transmission_curve(
    const ModelParams& p, std::span<const double> intensity_grid,
    const std::optional<TwoBeamSpec>& two_beam_spec = std::nullopt, int threads = 1);

}  // namespace isolator::two_level

#endif  // ISOLATOR_TWO_LEVEL_HPP
