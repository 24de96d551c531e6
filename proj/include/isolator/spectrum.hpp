#ifndef ISOLATOR_SPECTRUM_HPP
#define ISOLATOR_SPECTRUM_HPP

#include <span>
#include <utility>
#include <vector>

#include "isolator/numerics.hpp"
#include "isolator/params.hpp"
#include "isolator/three_level.hpp"

namespace isolator::spectrum {

// Regression system of the two-time dipole correlators. The drift is the same
// matrix as the mean-field system; the inhomogeneity is the mean-field
// constant vector scaled by conj(s1(inf)); `initial` holds the equal-time
// correlators shifted by their tau -> infinity values, so the shifted system
// is homogeneous and decays.
struct CorrelatorSystem {
  numerics::ComplexMatrix drift;
  numerics::ComplexVector inhomogeneity;
  numerics::ComplexVector initial;
  numerics::ComplexVector asymptotic;
  std::size_t emission_row = 0;  // slot of <sigma^dag(t) sigma(t+tau)>
  double gamma_out = 0.0;
  double decay_horizon = 0.0;
  double feature_scale = 0.0;  // frequency scale of the spectral structure
};

CorrelatorSystem build_correlator_system_2la(const ModelParams& p, const BeamDrive& beam);
CorrelatorSystem build_correlator_system_3la(const ModelParams& p, const DriveParams3& d3,
                                             const BeamDrive& beam);

// Delta-peak weight at the probe frequency plus the incoherent density on a
// grid of offsets from the probe frequency. t_coh and t_inc are normalized by
// the input intensity; t_inc comes from an adaptive quadrature over the whole
// line.
struct SpectrumDecomposition {
  double coherent_weight = 0.0;
  std::vector<std::pair<double, double>> incoherent_density;
  double t_coh = 0.0;
  double t_inc = 0.0;
};

// Closed-form coherent transmission 4 g_in g_out gamma_d xi / Lambda^2; the
// expression is regular at zero intensity.
double coherent_transmission(const ModelParams& p, double intensity, Side direction);

// Coherent/incoherent split of the driven Lambda atom's transmission,
// evaluated from the steady state (no quadrature involved).
struct CoherentSplit {
  double t_coh = 0.0;
  double t_inc = 0.0;
  double total = 0.0;
};
CoherentSplit transmission_split_3la(const ModelParams& p, const DriveParams3& d3,
                                     double intensity, Side direction);

SpectrumDecomposition incoherent_spectrum(const ModelParams& p, const BeamDrive& beam,
                                          std::span<const double> omega_grid,
                                          int threads = 1);

SpectrumDecomposition spectrum_3la(const ModelParams& p, const DriveParams3& d3,
                                   const BeamDrive& beam,
                                   std::span<const double> omega_grid, int threads = 1);

// Coherent and incoherent contributions to the nonreciprocity, plus the
// intensity where the incoherent difference changes sign (NaN when the sign
// never changes, which requires dephasing stronger than the total decay).
struct NrDecomposition {
  double delta_t_coh = 0.0;
  double delta_t_inc = 0.0;
  double i_zero = 0.0;
};

NrDecomposition nonreciprocity_decomposition(const ModelParams& p, double intensity);

// Default density grid: offsets within +-20 gamma_t of the probe, 2001 points.
std::vector<double> default_omega_grid(const ModelParams& p);

}  // namespace isolator::spectrum

#endif  // ISOLATOR_SPECTRUM_HPP
