#ifndef ISOLATOR_THREE_LEVEL_HPP
#define ISOLATOR_THREE_LEVEL_HPP

#include <span>
#include <vector>

#include "isolator/numerics.hpp"
#include "isolator/params.hpp"
#include "isolator/two_level.hpp"

namespace isolator::three_level {

// Steady state of the driven Lambda system, ordered
// (s1, s1*, s2, m1, m1*, m2, n, n*): probe dipole, excited population,
// drive-transition dipole, |s> population, ground-|s> coherence.
struct SteadyState3La {
  numerics::ComplexVector m;

  Complex s1() const { return m[0]; }
  double s2() const { return m[2].real(); }
  Complex m1() const { return m[3]; }
  double m2() const { return m[5].real(); }
  Complex n() const { return m[6]; }
};

// Mean-field system dM/dt = R M + Omega_M for the driven Lambda atom.
struct RSystem {
  numerics::ComplexMatrix r_matrix;
  numerics::ComplexVector omega_m;
};

// Exact transcription of the 8x8 drift for a single real-amplitude probe
// entering from beam.side. Requires beam.phase == 0.
RSystem build_r_system(const ModelParams& p, const DriveParams3& d3, const BeamDrive& beam);

// Literal steady state -R^{-1} Omega_M with a stability gate. The undriven
// system (rabi_c == 0) has an identically zero |s>-population row and throws
// SingularMatrixError here; use the model-aware overload for that case.
SteadyState3La steady_state_3la(const RSystem& rsys);
SteadyState3La steady_state_3la(const RSystem& rsys, double decay_horizon);

// Steady state from the physical preparation (atom in the ground state before
// the probe arrives). With rabi_c == 0 and a dephasing |s> level the
// |s> manifold never populates, so it is pinned at zero and the remaining
// system solved; with rabi_c == 0 and no |s> dephasing the steady state is
// genuinely non-unique (dark-state trapping) and SingularMatrixError is
// raised.
SteadyState3La steady_state_3la(const ModelParams& p, const DriveParams3& d3,
                                const BeamDrive& beam);

// Decay horizon long enough for the drive-hybridized slow modes of the Lambda
// system; the diagonal rates alone badly underestimate it near the EIT window.
double stability_horizon(const ModelParams& p, const DriveParams3& d3);

// Probe transmission 2 gamma_out S2 / (v_g I). Zero intensity is evaluated at
// I = 1e-12 and checked for stability against I = 1e-10.
double transmission_3la(const ModelParams& p, const DriveParams3& d3, double intensity,
                        Side direction);

// Closed form for the lossless atom; rejects lossy parameters. Agrees with the
// matrix route wherever the latter is nonsingular.
double transmission_lossless(const ModelParams& p, const DriveParams3& d3, double intensity,
                             Side direction = Side::Left);

struct NrCurve3La {
  std::vector<two_level::NonreciprocityResult> curve;
  double max_delta_t = 0.0;
  double argmax_intensity = 0.0;
};

// Nonreciprocity over an intensity grid plus a golden-section refinement of
// the maximum around the grid argmax.
NrCurve3La nonreciprocity_3la(const ModelParams& p, const DriveParams3& d3,
                              std::span<const double> intensity_grid, int threads = 1);

}  // namespace isolator::three_level

#endif  // ISOLATOR_THREE_LEVEL_HPP
