// Model-space Jacobi functions sn_c / cn_c and the scalar Riccati
// comparison solution, with derivative identities.
//
// sn_c solves x'' - c x = 0 with sn_c(0) = 0, sn_c'(0) = 1, and
// cn_c := sn_c'.  The comparison solution
//
//   f(tau, t) = (tau cn_c(t) + c sn_c(t)) / (cn_c(t) + tau sn_c(t))
//
// solves theta' + theta^2 - c = 0, theta(0) = tau, on the interval where
// the denominator stays positive.

#ifndef CMPGEO_MODEL_SPACE_HPP
#define CMPGEO_MODEL_SPACE_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmpgeo {

// Threshold below which sn/cn switch to the power series in c*t^2; the
// piecewise trig/hyperbolic formulas are 0/0 at c = 0.
inline constexpr double kModelSeriesThreshold = 1e-8;

// Relative tolerance used to declare the comparison denominator vanished.
inline constexpr double kRiccatiDenomTol = 1e-10;

namespace detail {

// sum_{k>=0} z^k / (2k+1)!  so that sn_c(t) = t * sncSeries(c t^2).
template <typename Scalar>
Scalar snc_series(Scalar z) {
  Scalar term = Scalar(1), sum = Scalar(1);
  for (int k = 1; k <= 8; ++k) {
    term *= z / Scalar((2 * k) * (2 * k + 1));
    sum += term;
  }
  return sum;
}

// sum_{k>=0} z^k / (2k)!  so that cn_c(t) = cncSeries(c t^2).
template <typename Scalar>
Scalar cnc_series(Scalar z) {
  Scalar term = Scalar(1), sum = Scalar(1);
  for (int k = 1; k <= 8; ++k) {
    term *= z / Scalar((2 * k - 1) * (2 * k));
    sum += term;
  }
  return sum;
}

}  // namespace detail

/// sn_c(t): solution of x'' - c x = 0, x(0) = 0, x'(0) = 1.
template <typename Scalar>
Scalar sn(Scalar c, Scalar t) {
  const Scalar z = c * t * t;
  if (std::abs(z) < Scalar(kModelSeriesThreshold))
    return t * detail::snc_series(z);
  if (c > Scalar(0)) {
    const Scalar s = std::sqrt(c);
    return std::sinh(t * s) / s;
  }
  const Scalar s = std::sqrt(-c);
  return std::sin(t * s) / s;
}

/// cn_c(t) = sn_c'(t).
template <typename Scalar>
Scalar cn(Scalar c, Scalar t) {
  const Scalar z = c * t * t;
  if (std::abs(z) < Scalar(kModelSeriesThreshold))
    return detail::cnc_series(z);
  if (c > Scalar(0)) return std::cosh(t * std::sqrt(c));
  return std::cos(t * std::sqrt(-c));
}

/// Denominator of the comparison solution, cn_c(t) + tau sn_c(t).
/// Equals 1 at t = 0; the solution lives while it stays positive.
template <typename Scalar>
Scalar riccati_denominator(Scalar tau0, Scalar c, Scalar t) {
  return cn(c, t) + tau0 * sn(c, t);
}

/// Closed-form solution of theta' + theta^2 - c = 0, theta(0) = tau0.
/// Throws std::domain_error once the denominator has dropped below the
/// blow-up tolerance (the comparison solution ceased to exist).
template <typename Scalar>
Scalar riccati_closed_form(Scalar tau0, Scalar c, Scalar t) {
  const Scalar snt = sn(c, t), cnt = cn(c, t);
  const Scalar denom = cnt + tau0 * snt;
  const Scalar scale = std::max(std::abs(cnt), std::abs(tau0 * snt));
  if (denom <= Scalar(kRiccatiDenomTol) * std::max(scale, Scalar(1)))
    throw std::domain_error("riccati_closed_form: comparison solution blew up (denominator <= 0)");
  return (tau0 * cnt + c * snt) / denom;
}

struct RiccatiPartials {
  double f_tau;  // d f / d tau, always > 0
  double f_t;    // d f / d t = (c - tau^2) / denom^2
};

/// Partial derivatives of the comparison solution.  f_tau reduces to
/// 1/denom^2 by the Wronskian identity cn^2 - c sn^2 = 1.
inline RiccatiPartials riccati_partials(double tau0, double c, double t) {
  const double snt = sn(c, t), cnt = cn(c, t);
  const double denom = cnt + tau0 * snt;
  const double scale = std::max(std::abs(cnt), std::abs(tau0 * snt));
  if (denom <= kRiccatiDenomTol * std::max(scale, 1.0))
    throw std::domain_error("riccati_partials: comparison solution blew up (denominator <= 0)");
  const double d2 = denom * denom;
  return {1.0 / d2, (c - tau0 * tau0) / d2};
}

/// Validity interval of the comparison solution started at slope tau0.
struct RiccatiState {
  double tau0;
  double c;
  double domain_end;  // first denominator zero in (0, horizon], else horizon
};

/// Locates the first zero of the denominator on (0, horizon] by scan +
/// bisection.  Closed forms exist only case-by-case, bisection covers all.
inline RiccatiState make_riccati_state(double tau0, double c, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("make_riccati_state: horizon must be > 0");
  if (!std::isfinite(tau0) || !std::isfinite(c))
    throw std::invalid_argument("make_riccati_state: tau0 and c must be finite");
  auto denom = [&](double t) { return riccati_denominator(tau0, c, t); };
  const int kScan = 2048;
  double lo = 0.0, flo = 1.0;  // denom(0) = 1
  double end = horizon;
  bool bracketed = false;
  for (int i = 1; i <= kScan; ++i) {
    const double t = horizon * static_cast<double>(i) / kScan;
    const double ft = denom(t);
    if (ft <= 0.0) {
      double hi = t;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (denom(mid) > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      end = 0.5 * (lo + hi);
      bracketed = true;
      break;
    }
    lo = t;
    flo = ft;
  }
  (void)flo;
  (void)bracketed;
  return {tau0, c, end};
}

}  // namespace cmpgeo

#endif  // CMPGEO_MODEL_SPACE_HPP
