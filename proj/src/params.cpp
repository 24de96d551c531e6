#include "isolator/params.hpp"

#include <cmath>
#include <stdexcept>

namespace isolator {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

}  // namespace

void ModelParams::validate() const {
  require_finite(gamma_l, "gamma_l");
  require_finite(gamma_r, "gamma_r");
  require_finite(gamma_nonrad, "gamma_nonrad");
  require_finite(gamma_dephase, "gamma_dephase");
  require_finite(detuning_p, "detuning_p");
  if (gamma_l <= 0.0) throw std::invalid_argument("gamma_l must be > 0");
  if (gamma_r <= 0.0) throw std::invalid_argument("gamma_r must be > 0");
  if (gamma_nonrad < 0.0) throw std::invalid_argument("gamma_nonrad must be >= 0");
  if (gamma_dephase < 0.0) throw std::invalid_argument("gamma_dephase must be >= 0");
}

ModelParams ModelParams::swapped() const {
  ModelParams q = *this;
  q.gamma_l = gamma_r;
  q.gamma_r = gamma_l;
  return q;
}

void DriveParams3::validate() const {
  require_finite(rabi_c, "rabi_c");
  require_finite(detuning_c, "detuning_c");
  require_finite(gamma_dephase_s, "gamma_dephase_s");
  if (rabi_c < 0.0) throw std::invalid_argument("rabi_c must be >= 0");
  if (gamma_dephase_s < 0.0) throw std::invalid_argument("gamma_dephase_s must be >= 0");
}

DerivedRates derive_rates(const ModelParams& p) {
  p.validate();
  DerivedRates r;
  r.gamma_d = p.gamma_l + p.gamma_r + p.gamma_nonrad;
  r.gamma_t = r.gamma_d + p.gamma_dephase;
  r.gamma_s = r.gamma_t;
  r.xi = r.gamma_d * (r.gamma_t * r.gamma_t + p.detuning_p * p.detuning_p);
  return r;
}

DerivedRates derive_rates(const ModelParams& p, const DriveParams3& d3) {
  d3.validate();
  DerivedRates r = derive_rates(p);
  r.gamma_s = r.gamma_t + d3.gamma_dephase_s;
  return r;
}

double rabi_from_intensity(double gamma_side, double intensity) {
  if (!(gamma_side > 0.0)) throw std::invalid_argument("gamma_side must be > 0");
  if (intensity < 0.0 || !std::isfinite(intensity)) {
    throw std::invalid_argument("intensity must be >= 0 and finite");
  }
  return std::sqrt(2.0 * gamma_side * group_velocity * intensity);
}

double intensity_from_rabi(double gamma_side, double rabi) {
  if (!(gamma_side > 0.0)) throw std::invalid_argument("gamma_side must be > 0");
  if (rabi < 0.0 || !std::isfinite(rabi)) {
    throw std::invalid_argument("rabi must be >= 0 and finite");
  }
  return rabi * rabi / (2.0 * gamma_side * group_velocity);
}

BeamDrive BeamDrive::from_intensity(const ModelParams& p, Side side, double intensity,
                                    double phase) {
  p.validate();
  BeamDrive b;
  b.side = side;
  b.intensity = intensity;
  b.rabi = rabi_from_intensity(p.coupling(side), intensity);
  b.phase = phase;
  return b;
}

}  // namespace isolator
