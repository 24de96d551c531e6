#ifndef ISOLATOR_NUMERICS_HPP
#define ISOLATOR_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "isolator/params.hpp"

namespace isolator::numerics {

using ComplexVector = std::vector<Complex>;

// Dense square complex matrix, row-major. The model systems are 3x3 and 8x8,
// so nothing here is tuned for large dimensions.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  ComplexVector apply(const ComplexVector& x) const;
  ComplexMatrix multiply(const ComplexMatrix& rhs) const;

  double max_abs() const;   // max |a_ij|
  double inf_norm() const;  // max row sum of |a_ij|
  bool all_finite() const;

 private:
  std::size_t n_ = 0;
  ComplexVector a_;
};

// dx/dt = drift * x + inhomogeneity
struct LinearSystemModel {
  ComplexMatrix drift;
  ComplexVector inhomogeneity;
};

// LU solve with partial pivoting. A pivot below 1e-14 * max|A| throws
// SingularMatrixError. Residual is within 1e-10 * ||b||_inf for
// well-conditioned inputs.
ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b);

// The horizon used when none is supplied: 100 over the smallest positive
// diagonal decay rate of the drift.
double default_decay_horizon(const ComplexMatrix& a);

// True iff the linear flow of `a` contracts the probe below 1e-6 of its norm
// by the horizon. The probe should have a component along every mode; pass a
// generic vector. Implemented as an integer power of a single RK4 step map,
// which keeps very long horizons cheap.
bool decay_check(const ComplexMatrix& a, const ComplexVector& probe, double horizon);
bool decay_check(const ComplexMatrix& a, const ComplexVector& probe);

// Generic probe with distinct, nonreal entries so no invariant subspace is
// missed by accident.
ComplexVector generic_probe(std::size_t n);

// Solves drift * x + inhomogeneity = 0 and verifies that the drift decays
// (UnstableSystemError otherwise). The horizon overload exists for systems
// whose slowest mode is much slower than any diagonal rate.
ComplexVector steady_state(const LinearSystemModel& model);
ComplexVector steady_state(const LinearSystemModel& model, double decay_horizon);

struct TrajectoryPoint {
  double t = 0.0;
  ComplexVector x;
};

// Classical fixed-step RK4 on dx/dt = A x + b. Deterministic by construction;
// used as the time-domain oracle for every closed form in the project.
std::vector<TrajectoryPoint> integrate_linear_ivp(const LinearSystemModel& model,
                                                  const ComplexVector& x0, double t_end,
                                                  double dt);

// Component `row` of -(A + i*delta_omega*I)^{-1} v, i.e. the one-sided Fourier
// transform at delta_omega of the decaying trajectory started at v.
Complex resolvent_component(const ComplexMatrix& a, const ComplexVector& v,
                            double delta_omega, std::size_t row);

using ScalarFn = std::function<double(double)>;

// Bracketing bisection/secant hybrid; requires f(lo) * f(hi) < 0.
double find_root(const ScalarFn& f, double lo, double hi, double tol);

struct MaximizeResult {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search. Exact only for unimodal f; otherwise returns the best
// point encountered.
MaximizeResult maximize_scalar(const ScalarFn& f, double lo, double hi, double tol);

// Adaptive Simpson with absolute tolerance; throws MaxDepthError when the
// recursion cannot meet the tolerance.
double integrate_adaptive(const ScalarFn& f, double a, double b, double tol);

}  // namespace isolator::numerics

#endif  // ISOLATOR_NUMERICS_HPP
