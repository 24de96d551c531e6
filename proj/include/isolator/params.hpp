#ifndef ISOLATOR_PARAMS_HPP
#define ISOLATOR_PARAMS_HPP

#include <complex>

namespace isolator {

using Complex = std::complex<double>;

// All rates and frequency offsets are dimensionless, measured in units of the
// atomic transition frequency. The waveguide group velocity is fixed to 1.
inline constexpr double group_velocity = 1.0;

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

// Couplings and losses of the emitter plus the probe detuning.
struct ModelParams {
  double gamma_l = 0.0;        // left waveguide decay rate
  double gamma_r = 0.0;        // right waveguide decay rate
  double gamma_nonrad = 0.0;   // nonradiative decay rate
  double gamma_dephase = 0.0;  // pure dephasing rate of |e>
  double detuning_p = 0.0;     // probe detuning from the bare transition

  // Throws std::invalid_argument on nonpositive waveguide rates, negative
  // losses, or non-finite values.
  void validate() const;

  double coupling(Side s) const { return s == Side::Left ? gamma_l : gamma_r; }

  // Same physics with the waveguide couplings exchanged; used to evaluate the
  // reversed propagation direction.
  ModelParams swapped() const;
};

// Classical drive on the |s> <-> |e> transition of the three-level atom.
struct DriveParams3 {
  double rabi_c = 0.0;           // drive Rabi frequency
  double detuning_c = 0.0;       // drive detuning from the |s>-|e> transition
  double gamma_dephase_s = 0.0;  // pure dephasing rate of |s>

  void validate() const;
};

// Rates derived from the raw parameters; gamma_s includes the |s>-level
// dephasing and is only meaningful when drive parameters are supplied.
struct DerivedRates {
  double gamma_d = 0.0;  // total population decay
  double gamma_t = 0.0;  // total coherence decay of |e>
  double gamma_s = 0.0;  // total coherence decay of the driven transition
  double xi = 0.0;       // gamma_d * (gamma_t^2 + detuning_p^2)
};

DerivedRates derive_rates(const ModelParams& p);
DerivedRates derive_rates(const ModelParams& p, const DriveParams3& d3);

// Rabi amplitude of a waveguide beam: omega^2 = 2 * gamma_side * v_g * I.
double rabi_from_intensity(double gamma_side, double intensity);
double intensity_from_rabi(double gamma_side, double rabi);

// One coherent input beam. `rabi` is derived from the intensity and the
// coupling of the incidence side; `phase` matters only when a second beam is
// present.
struct BeamDrive {
  Side side = Side::Left;
  double intensity = 0.0;
  double rabi = 0.0;
  double phase = 0.0;

  static BeamDrive from_intensity(const ModelParams& p, Side side, double intensity,
                                  double phase = 0.0);

  Complex amplitude() const { return rabi * std::exp(Complex(0.0, phase)); }
};

}  // namespace isolator

#endif  // ISOLATOR_PARAMS_HPP
