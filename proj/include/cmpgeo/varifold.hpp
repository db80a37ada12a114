// Discrete varifolds: weighted (point, tangent-plane) atoms with boundary
// flags, first variation, mean-curvature-bound testing, ball masses and the
// growth diagnostics behind the stochastic-completeness / parabolicity
// criteria.

#ifndef CMPGEO_VARIFOLD_HPP
#define CMPGEO_VARIFOLD_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cmpgeo/spectral.hpp"

namespace cmpgeo {

struct DiscreteVarifold {
  Matrix points;                     // m x n ambient positions
  Vector weights;                    // n positive quadrature weights
  std::vector<Matrix> planes;        // per point: m x ell orthonormal frame
  std::vector<std::uint8_t> boundary;  // per point: support of the boundary measure
  int ell = 0;
  bool rectifiable = true;

  int ambient_dim() const { return static_cast<int>(points.rows()); }
  int size() const { return static_cast<int>(points.cols()); }
  double mass() const { return weights.sum(); }
  double bounding_radius() const;

  /// Enforces the type invariants: positive weights, orthonormal frames
  /// (1e-8), ell < ambient dimension.  Throws std::invalid_argument.
  void validate() const;
};

struct TestField {
  std::function<Vector(const Vector&)> Z;
  double support_radius = 0.0;  // Z vanishes outside this ball around center
  Vector center;
  // Optional analytic Jacobian; finite differences are used when absent.
  std::function<Matrix(const Vector&)> jacobian;
};

/// Default finite-difference step for a varifold: 1e-5 times the bounding
/// box diagonal (balances truncation against rounding at double precision).
double default_fd_step(const DiscreteVarifold& V);

/// Tangential divergence of Z at (p, W): sum_j e_j . (DZ e_j).
double tangential_divergence(const TestField& Z, const Vector& p, const Matrix& plane,
                             double fd_step);

/// First variation  delta V(Z) = sum_i w_i div^{W_i} Z(p_i).
double first_variation(const DiscreteVarifold& V, const TestField& Z, double fd_step = 0.0);

/// Indices of boundary points dilated by one k-nearest-neighbor ring.
std::vector<std::uint8_t> dilated_boundary_mask(const DiscreteVarifold& V, int k = 8);

struct CurvatureBoundReport {
  std::vector<double> per_field;  // delta V(Z) + ell int h |Z| d||V||
  double min_value = 0.0;
  int argmin_field = -1;
  double mass = 0.0;
};

/// Evaluates delta V(Z) + ell sum_i w_i h |Z(p_i)| over the family; a
/// min >= -tol is consistent with |H| <= h on the tested family (necessary
/// condition only).  Fields whose support meets the one-ring dilation of the
/// boundary mask are rejected with std::invalid_argument.
CurvatureBoundReport check_mean_curvature_bound(const DiscreteVarifold& V, double h,
                                                const std::vector<TestField>& fields,
                                                double fd_step = 0.0);

/// ||V||(B_r) for each radius (sorted ascending) around `center`.
std::vector<double> mass_in_balls(const DiscreteVarifold& V, const std::vector<double>& radii,
                                  const Vector& center);

struct Verdict {
  bool value = false;
  double confidence = 0.0;  // in [0,1]; growth verdicts are extrapolations
  std::string note;
};

struct GrowthDiagnostics {
  double d0_estimate = 0.0;
  double fitted_exponent = 0.0;  // slope of log mass vs log r on the upper radii
  Verdict parabolic;             // divergence of int r dr / ||V||(B_r)
  Verdict stochastically_complete;
  std::vector<double> radii;
  std::vector<double> masses;
};

/// Growth diagnostics from ball masses around `center`.
///  - d0: min over the upper half of the radii of log mass / r^(2-sigma-alpha)
///    (log mass / log r when alpha = 2-sigma);
///  - parabolic: fitted power-law exponent k applied to int r dr / r^k
///    (diverges iff k <= 2);
///  - stochastic completeness: the sigma = alpha = 0 growth condition.
GrowthDiagnostics growth_diagnostics(const DiscreteVarifold& V, double sigma, double alpha,
                                     const std::vector<double>& radii, const Vector& center);
GrowthDiagnostics growth_diagnostics(const DiscreteVarifold& V, double sigma, double alpha,
                                     const std::vector<double>& radii);

/// Smooth radial cutoff: 1 on [0, theta*R], 0 outside R, C^1 taper between
/// (cubic smoothstep; |d/dr| <= 2/((1-theta) R)).
double radial_cutoff(double r, double R, double theta);
double radial_cutoff_slope(double r, double R, double theta);

}  // namespace cmpgeo

#endif  // CMPGEO_VARIFOLD_HPP
