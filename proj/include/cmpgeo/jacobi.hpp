// Matrix Riccati and Jacobi-tensor integration along a geodesic, focal
// detection, epsilon-bending of initial data, index-form second variation,
// and the numerical audit of the Riccati comparison bound.
//
// Conventions (all on the orthogonal complement of the geodesic velocity,
// in a parallel orthonormal frame of rank dim = m-1):
//
//   B' + B^2 + R(t) = 0,   B(0) = -II_S          (Riccati)
//   J'' + R(t) J  = 0,     J(0) = I, J'(0) = B(0) (Jacobi, J' = B J)
//
// R(t) is the curvature operator R(E_a, gamma', E_b, gamma').

#ifndef CMPGEO_JACOBI_HPP
#define CMPGEO_JACOBI_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "cmpgeo/spectral.hpp"

namespace cmpgeo {

struct CurvatureProfile {
  int dim = 0;                                  // rank of gamma'^perp
  std::function<Matrix(double t)> R_of_t;       // symmetric dim x dim
  double horizon = 0.0;

  static CurvatureProfile constant(int dim, const Matrix& R, double horizon);
  /// Space form with Ric = -c I along the geodesic (R = -c I).
  static CurvatureProfile space_form(int dim, double c, double horizon);
};

struct RiccatiTrajectory {
  std::vector<double> times;
  std::vector<Matrix> B_of_t;   // one (possibly truncated) entry per time kept
  std::optional<double> blowup_time;
};

struct JacobiTrajectory {
  std::vector<double> times;
  std::vector<Matrix> J_of_t;
  std::vector<Matrix> Jprime_of_t;
  std::optional<double> first_focal;  // first zero of det J, bisected to 1e-8
};

/// Integrates the matrix Riccati equation from B(0) = B0 to time T with the
/// requested local tolerance; each accepted step is re-symmetrized.  When the
/// spectral norm of B exceeds 1/tol the integration halts and blowup_time is
/// set; the trajectory keeps only the samples before blow-up.
RiccatiTrajectory integrate_riccati(const CurvatureProfile& profile, const Matrix& B0, double T,
                                    double tol, int samples = 129);

/// Integrates the Jacobi system J'' + R J = 0, J(0) = I, J'(0) = Jprime0.
/// first_focal is reported when det J crosses the determinant tolerance.
JacobiTrajectory integrate_jacobi(const CurvatureProfile& profile, const Matrix& Jprime0, double T,
                                  double tol, int samples = 129, double det_tol = 1e-12);

/// Second fundamental form of the epsilon-bent supporting hypersurface,
/// II_S - eps * I.  The matching Riccati initial condition is -II_S + eps I.
Matrix epsilon_bend(const Matrix& II_S, double eps);

/// Unit kernel direction of J (right singular vector of the smallest
/// singular value).
Vector kernel_direction(const Matrix& J);

struct SecondVariation {
  double index_form;    // <B(0)v, v> + int |Vbar'|^2 - <R Vbar, Vbar>
  double closed_form;   // -eps |Vbar(0)|^2 + eps^2 int |Vbar|^2
  double field_sup;     // sup_t |Vbar(t)|
};

/// Second variation of energy for the variation generated by the modified
/// field Vbar(t) = J_eps(t) v e^{-eps t}, where J_eps is the Jacobi tensor of
/// the eps-bent initial condition B0 + eps I.  v must be a (numerical) kernel
/// direction of J_eps(T).  Both evaluation routes are returned; they agree up
/// to quadrature error.
SecondVariation second_variation(const CurvatureProfile& profile, const Matrix& B0, double eps,
                                 double T, const Vector& v, double tol = 1e-10,
                                 double kernel_tol = 1e-5);

struct ComparisonReport {
  double max_violation;  // max over samples/frames of lhs - rhs (positive = violation)
  double min_violation;  // most negative gap, for saturation checks
  int samples = 0;
  int frames_per_sample = 0;
  double T_effective = 0.0;  // horizon actually audited (before any blow-up)
};

/// Audits Riccati comparison: integrates B from B(0) = -II_S and checks, at
/// each sample and over the extremal + random ell-frames,
///   (1/ell) Tr_W B(t)  <=  riccati_closed_form(-Lambda_ell, c, t).
/// Preconditions (checked): p_minus(R(t), ell) >= -c on the sample grid and
/// p_minus(II_S, ell) >= Lambda_ell.
ComparisonReport verify_comparison(const CurvatureProfile& profile, const Matrix& II_S,
                                   double Lambda_ell, double c, int ell, double T, double tol,
                                   int random_frames = 3, unsigned seed = 2026);

}  // namespace cmpgeo

#endif  // CMPGEO_JACOBI_HPP
