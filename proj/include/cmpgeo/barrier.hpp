// Barrier construction with explicit constants and a certificate checker on
// model domains.
//
// Given curvature bound c, dimension ell, boundary convexity constants
// Lambda_{ell-1} and Lambda_ell, a mean-curvature budget h and a collar
// radius R, the barrier is u(r) = exp(-C2 r) on the collar {0 < r < R} and
// satisfies
//
//   p_minus(hess u, ell) - h |grad u|  >=  delta_bar   (h < Lambda_ell)
//                                     >=  0            (h = Lambda_ell)
//
// with
//   C1        = ell h + (ell-1) max(-Lambda_{ell-1} + 1, sqrt(c_+))
//   delta     = ell (Lambda_ell - h) / 2          (cases A1, A2)
//             = ell (Lambda_ell - h - c R) / 2    (case B)
//   C2        = C1 + delta
//   delta_bar = (1/ell) C2 exp(-C2 R) delta.

#ifndef CMPGEO_BARRIER_HPP
#define CMPGEO_BARRIER_HPP

#include <string>

#include "cmpgeo/domains.hpp"

namespace cmpgeo {

struct BarrierParams {
  double c = 0.0;                 // curvature-bound parameter
  int ell = 2;                    // >= 2
  double Lambda_ell_minus_1 = 0;  // any sign
  double Lambda_ell = 0;          // >= 0
  double h = 0;                   // 0 <= h <= Lambda_ell
  double R = 1;                   // > 0; < (Lambda_ell - h)/c in case B
};

enum class BarrierCase { A1, A2, B };  // Lambda^2 > c, == c, < c

struct BarrierCertificate {
  BarrierCase case_tag = BarrierCase::A1;
  double C1 = 0;
  double delta = 0;
  double C2 = 0;
  double delta_bar = 0;
  BarrierParams params;

  bool strict() const { return delta_bar > 0; }
  /// Barrier profile eta(t) = exp(-C2 t); strictly decreasing, eta(0) = 1.
  double eta(double t) const;
};

const char* to_string(BarrierCase c);

/// Validates the parameters and assembles the certificate.
/// Throws std::invalid_argument on: h > Lambda_ell; h = Lambda_ell while
/// Lambda_ell^2 < c; R out of (0, (Lambda_ell - h)/c) in case B.
BarrierCertificate build_barrier(const BarrierParams& p);

struct BarrierValue {
  double u;
  double grad_norm;  // |grad u| = C2 u
};

/// Evaluates the barrier at distance r in [0, R].
BarrierValue eval_barrier(const BarrierCertificate& cert, double r);

struct CertifyReport {
  double min_margin = 0;  // min over grid of p_minus(hess u, ell) - h |grad u|
  double threshold = 0;   // delta_bar, or 0 in the degenerate h = Lambda_ell case
  bool strict = true;     // false: "no strict certificate" (delta_bar == 0)
  int grid = 0;
  bool pass(double slack) const { return min_margin >= threshold - slack; }
};

/// Checks the certified inequality over a uniform grid of r in
/// (0, min(R, reach)) on a model domain with closed-form distance Hessian,
/// assembling hess u = eta'' dr (x) dr + eta' hess r pointwise.
CertifyReport certify_on_model(const BarrierCertificate& cert, const DomainSpec& domain,
                               int grid_n = 200);

}  // namespace cmpgeo

#endif  // CMPGEO_BARRIER_HPP
