#include "isolator/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "isolator/errors.hpp"

namespace isolator::numerics {

namespace {

constexpr double kPivotFactor = 1e-14;
constexpr double kDecayThreshold = 1e-6;

double vec_inf_norm(const ComplexVector& v) {
  double m = 0.0;
  for (const Complex& c : v) m = std::max(m, std::abs(c));
  return m;
}

bool vec_all_finite(const ComplexVector& v) {
  for (const Complex& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexVector ComplexMatrix::apply(const ComplexVector& x) const {
  if (x.size() != n_) throw std::invalid_argument("matrix/vector dimension mismatch");
  ComplexVector y(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += a_[r * n_ + c] * x[c];
    y[r] = acc;
  }
  return y;
}

ComplexMatrix ComplexMatrix::multiply(const ComplexMatrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  ComplexMatrix out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex v = a_[r * n_ + k];
      if (v == Complex(0.0)) continue;
      for (std::size_t c = 0; c < n_; ++c) out(r, c) += v * rhs(k, c);
    }
  }
  return out;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& c : a_) m = std::max(m, std::abs(c));
  return m;
}

double ComplexMatrix::inf_norm() const {
  double m = 0.0;
  for (std::size_t r = 0; r < n_; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < n_; ++c) s += std::abs(a_[r * n_ + c]);
    m = std::max(m, s);
  }
  return m;
}

bool ComplexMatrix::all_finite() const { return vec_all_finite(a_); }

ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b) {
  const std::size_t n = a.dim();
  if (b.size() != n) throw std::invalid_argument("solve_linear: dimension mismatch");
  if (!a.all_finite() || !vec_all_finite(b)) {
    throw std::invalid_argument("solve_linear: non-finite input");
  }

  const double pivot_floor = kPivotFactor * a.max_abs();

  ComplexMatrix lu = a;
  ComplexVector x = b;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_mag = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(lu(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best_mag <= pivot_floor) {
      throw SingularMatrixError("solve_linear: pivot below singularity threshold");
    }
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(col, c), lu(best, c));
      std::swap(x[col], x[best]);
    }
    const Complex inv_pivot = 1.0 / lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = lu(r, col) * inv_pivot;
      if (factor == Complex(0.0)) continue;
      lu(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) lu(r, c) -= factor * lu(col, c);
      x[r] -= factor * x[col];
    }
  }

  for (std::size_t ri = n; ri-- > 0;) {
    Complex acc = x[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= lu(ri, c) * x[c];
    x[ri] = acc / lu(ri, ri);
  }
  return x;
}

double default_decay_horizon(const ComplexMatrix& a) {
  double min_rate = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double rate = -a(i, i).real();
    if (rate > 0.0) min_rate = std::min(min_rate, rate);
  }
  if (!std::isfinite(min_rate)) {
    // no decaying diagonal entries; fall back to the overall magnitude scale
    const double scale = std::max(a.inf_norm(), 1e-12);
    return 100.0 / scale;
  }
  return 100.0 / min_rate;
}

ComplexVector generic_probe(std::size_t n) {
  ComplexVector v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = Complex(1.0 + 0.37 * static_cast<double>(k), 0.61 - 0.23 * static_cast<double>(k));
  }
  return v;
}

namespace {

// One RK4 step of dx/dt = A x as a matrix: I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24.
ComplexMatrix rk4_step_matrix(const ComplexMatrix& a, double h) {
  const std::size_t n = a.dim();
  ComplexMatrix ha(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) ha(r, c) = h * a(r, c);
  }
  ComplexMatrix acc = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 4; ++k) {
    term = term.multiply(ha);
    const double inv_fact = 1.0 / (k == 1 ? 1.0 : k == 2 ? 2.0 : k == 3 ? 6.0 : 24.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) acc(r, c) += inv_fact * term(r, c);
    }
  }
  return acc;
}

}  // namespace

bool decay_check(const ComplexMatrix& a, const ComplexVector& probe, double horizon) {
  if (probe.size() != a.dim()) throw std::invalid_argument("decay_check: dimension mismatch");
  const double probe_norm = vec_inf_norm(probe);
  if (probe_norm == 0.0) throw std::invalid_argument("decay_check: probe must be nonzero");
  if (!(horizon > 0.0)) throw std::invalid_argument("decay_check: horizon must be > 0");

  const double scale = std::max(a.inf_norm(), 1e-300);
  const double h = 0.1 / scale;
  const std::uint64_t steps =
      static_cast<std::uint64_t>(std::min(std::ceil(horizon / h), 9.0e18));

  // binary exponentiation of the one-step map
  ComplexMatrix base = rk4_step_matrix(a, h);
  ComplexVector x = probe;
  std::uint64_t remaining = steps;
  while (remaining > 0) {
    if (remaining & 1u) {
      x = base.apply(x);
      if (!vec_all_finite(x)) return false;  // blew up; certainly not decaying
    }
    remaining >>= 1;
    if (remaining > 0) {
      base = base.multiply(base);
      if (!base.all_finite()) {
        // growth overflowed the squared propagator; remaining applications
        // cannot shrink the state back below threshold
        return false;
      }
    }
  }
  return vec_inf_norm(x) < kDecayThreshold * probe_norm;
}

bool decay_check(const ComplexMatrix& a, const ComplexVector& probe) {
  return decay_check(a, probe, default_decay_horizon(a));
}

ComplexVector steady_state(const LinearSystemModel& model) {
  return steady_state(model, default_decay_horizon(model.drift));
}

ComplexVector steady_state(const LinearSystemModel& model, double decay_horizon) {
  ComplexVector negated = model.inhomogeneity;
  for (Complex& c : negated) c = -c;
  ComplexVector x = solve_linear(model.drift, negated);
  if (!decay_check(model.drift, generic_probe(model.drift.dim()), decay_horizon)) {
    throw UnstableSystemError("steady_state: drift has a non-decaying mode");
  }
  return x;
}

std::vector<TrajectoryPoint> integrate_linear_ivp(const LinearSystemModel& model,
                                                  const ComplexVector& x0, double t_end,
                                                  double dt) {
  const std::size_t n = model.drift.dim();
  if (x0.size() != n || model.inhomogeneity.size() != n) {
    throw std::invalid_argument("integrate_linear_ivp: dimension mismatch");
  }
  if (!(dt > 0.0) || !(t_end > 0.0)) {
    throw std::invalid_argument("integrate_linear_ivp: dt and t_end must be > 0");
  }

  const auto& a = model.drift;
  const auto& b = model.inhomogeneity;
  auto deriv = [&](const ComplexVector& x) {
    ComplexVector d = a.apply(x);
    for (std::size_t i = 0; i < n; ++i) d[i] += b[i];
    return d;
  };

  const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  std::vector<TrajectoryPoint> out;
  out.reserve(steps + 1);
  out.push_back({0.0, x0});

  ComplexVector x = x0;
  double t = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double h = std::min(dt, t_end - t);
    ComplexVector k1 = deriv(x);
    ComplexVector tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    ComplexVector k2 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    ComplexVector k3 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    ComplexVector k4 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    t += h;
    if (!vec_all_finite(x)) {
      throw DivergedError("integrate_linear_ivp: non-finite state at t=" + std::to_string(t));
    }
    out.push_back({t, x});
  }
  return out;
}

Complex resolvent_component(const ComplexMatrix& a, const ComplexVector& v,
                            double delta_omega, std::size_t row) {
  const std::size_t n = a.dim();
  if (row >= n) throw std::invalid_argument("resolvent_component: row out of range");
  ComplexMatrix shifted = a;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += Complex(0.0, delta_omega);
  ComplexVector negated = v;
  for (Complex& c : negated) c = -c;
  return solve_linear(shifted, negated)[row];
}

double find_root(const ScalarFn& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("find_root: lo must be < hi");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw NoSignChangeError("find_root: f(lo) and f(hi) have the same sign");

  for (int it = 0; it < 400; ++it) {
    if (hi - lo < tol) break;
    // secant candidate, fall back to bisection when it leaves the bracket
    double mid = lo + (hi - lo) * 0.5;
    const double denom = fhi - flo;
    if (denom != 0.0) {
      const double sec = lo - flo * (hi - lo) / denom;
      const double margin = 0.01 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin) mid = sec;
    }
    const double fmid = f(mid);
    if (std::abs(fmid) < tol || fmid == 0.0) return mid;
    if (flo * fmid < 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return lo + (hi - lo) * 0.5;
}

MaximizeResult maximize_scalar(const ScalarFn& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: lo must be < hi");
  constexpr double kInvPhi = 0.6180339887498949;

  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  MaximizeResult best;
  best.x = f1 > f2 ? x1 : x2;
  best.value = std::max(f1, f2);
  // endpoints can win when f is not unimodal on the bracket
  const double fa = f(lo);
  const double fb = f(hi);
  if (fa > best.value) best = {lo, fa};
  if (fb > best.value) best = {hi, fb};
  return best;
}

namespace {

double simpson(double fa, double fm, double fb, double width) {
  return width / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const ScalarFn& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
  const double m = a + 0.5 * (b - a);
  const double lm = a + 0.25 * (b - a);
  const double rm = a + 0.75 * (b - a);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw MaxDepthError("integrate_adaptive: recursion depth exhausted");
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const ScalarFn& f, double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("integrate_adaptive: a must be < b");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tol must be > 0");
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(a + 0.5 * (b - a));
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) {
    throw std::invalid_argument("integrate_adaptive: non-finite integrand");
  }
  const double whole = simpson(fa, fm, fb, b - a);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52);
}

}  // namespace isolator::numerics
