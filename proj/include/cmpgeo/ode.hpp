// Adaptive Dormand-Prince 5(4) integrator on Eigen vectors.
//
// Small embedded-pair stepper with PI-free step control, step clamping to
// requested output times, and hooks for per-step state projection (used to
// re-symmetrize matrix states) and early termination (blow-up / event
// detection).

#ifndef CMPGEO_ODE_HPP
#define CMPGEO_ODE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cmpgeo {

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dydt)>;

enum class OdeStatus { ok, step_underflow, max_steps, halted };

struct OdeOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 => (t1-t0)/100
  double min_step = 1e-14;
  long max_steps = 2'000'000;
  // Applied to the state after every accepted step (e.g. symmetrization).
  std::function<void(Eigen::VectorXd&)> project;
  // Called after every accepted step; return false to halt integration.
  std::function<bool(double t, const Eigen::VectorXd& y)> watch;
};

struct OdeResult {
  OdeStatus status = OdeStatus::ok;
  double t = 0.0;
  Eigen::VectorXd y;
  long steps = 0;
};

namespace detail {

// Dormand-Prince coefficients (RK5(4)7M).
struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t1 (t1 > t0).
inline OdeResult ode_integrate(const OdeRhs& f, double t0, Eigen::VectorXd y0, double t1,
                               const OdeOptions& opt = {}) {
  using D = detail::Dopri5;
  if (!(t1 >= t0)) throw std::invalid_argument("ode_integrate: t1 must be >= t0");
  const long n = y0.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n), err(n);

  OdeResult res;
  res.t = t0;
  res.y = std::move(y0);
  if (t1 == t0) return res;

  double h = opt.initial_step > 0 ? opt.initial_step : (t1 - t0) / 100.0;
  f(res.t, res.y, k1);

  while (res.t < t1) {
    if (res.steps++ > opt.max_steps) {
      res.status = OdeStatus::max_steps;
      return res;
    }
    h = std::min(h, t1 - res.t);
    if (h < opt.min_step) {
      res.status = OdeStatus::step_underflow;
      return res;
    }

    ytmp = res.y + h * (D::a21 * k1);
    f(res.t + D::c2 * h, ytmp, k2);
    ytmp = res.y + h * (D::a31 * k1 + D::a32 * k2);
    f(res.t + D::c3 * h, ytmp, k3);
    ytmp = res.y + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3);
    f(res.t + D::c4 * h, ytmp, k4);
    ytmp = res.y + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4);
    f(res.t + D::c5 * h, ytmp, k5);
    ytmp = res.y + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5);
    f(res.t + h, ytmp, k6);
    y5 = res.y + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
    f(res.t + h, y5, k7);
    err = h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);

    double emax = 0.0;
    for (long i = 0; i < n; ++i) {
      const double sc =
          opt.abs_tol + opt.rel_tol * std::max(std::abs(res.y[i]), std::abs(y5[i]));
      emax = std::max(emax, std::abs(err[i]) / sc);
    }
    if (!std::isfinite(emax)) {  // overflow inside the trial step
      h *= 0.1;
      continue;
    }

    if (emax <= 1.0) {
      res.t += h;
      res.y = y5;
      if (opt.project) {
        opt.project(res.y);
        f(res.t, res.y, k7);  // FSAL invalidated by projection
      }
      k1 = k7;
      if (opt.watch && !opt.watch(res.t, res.y)) {
        res.status = OdeStatus::halted;
        return res;
      }
      const double fac = emax > 0 ? 0.9 * std::pow(emax, -0.2) : 5.0;
      h *= std::clamp(fac, 0.2, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(emax, -0.2), 0.1, 1.0);
    }
  }
  return res;
}

/// Integrates through the sorted `times` grid, invoking on_sample at each
/// grid point (including times.front() if it equals t0).  Stops early when
/// the watch hook halts; returns the final result.
inline OdeResult ode_integrate_sampled(
    const OdeRhs& f, double t0, Eigen::VectorXd y0, const std::vector<double>& times,
    const OdeOptions& opt,
    const std::function<void(double t, const Eigen::VectorXd& y)>& on_sample) {
  OdeResult res;
  res.t = t0;
  res.y = std::move(y0);
  for (double ts : times) {
    if (ts < res.t - 1e-15) throw std::invalid_argument("ode_integrate_sampled: times not sorted");
    if (ts > res.t) {
      res = ode_integrate(f, res.t, std::move(res.y), ts, opt);
      if (res.status != OdeStatus::ok) return res;
    }
    on_sample(ts, res.y);
  }
  return res;
}

}  // namespace cmpgeo

#endif  // CMPGEO_ODE_HPP
