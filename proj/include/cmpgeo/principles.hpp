// Maximum-principle constant table, test-field constructors, divergence
// audits, enclosure distance bounds and the Barta spectral floor.

#ifndef CMPGEO_PRINCIPLES_HPP
#define CMPGEO_PRINCIPLES_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cmpgeo/barrier.hpp"
#include "cmpgeo/mesh.hpp"
#include "cmpgeo/varifold.hpp"

namespace cmpgeo {

struct GrowthParams {
  double sigma = 0.0;  // in [0, 2]
  double alpha = 0.0;  // <= 2 - sigma
  double d0 = 0.0;     // >= 0
};

/// The maximum-principle constant C(sigma, alpha, d0):
///   I = 0                      -> 0
///   alpha < 2-sigma, sigma = 0 -> 0
///   alpha < 2-sigma, sigma > 0 -> d0 (2-sigma-alpha)^2   if alpha <  2(1-sigma)
///                                 d0 sigma (2-sigma-alpha) if alpha >= 2(1-sigma)
///   alpha = 2-sigma            -> sigma (sigma + d0 - 2)  if sigma + d0 >= 2, else 0
/// Continuous across alpha = 2(1-sigma) (both branches give d0 sigma^2).
double constant_C(double sigma, double alpha, double d0, bool I_positive);

/// A scalar field with gradient and Hessian access.
struct ScalarField {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> grad;
  std::function<Matrix(const Vector&)> hess;
};

/// Wraps a value callable with central finite differences for grad/hess.
ScalarField fd_field(std::function<double(const Vector&)> value, double step);

/// The barrier u = eta(dist to boundary) on a model domain as a field with
/// analytic jets (assembled from the closed-form distance Hessian).
ScalarField barrier_field(const BarrierCertificate& cert, const DomainSpec& domain);

/// Coordinate field u(x) = x_i.
ScalarField coordinate_field(int m, int i);

enum class TestFieldCase { i, ii, iii, iv, para };

struct TestFieldSpec {
  TestFieldCase field_case = TestFieldCase::i;
  double q = 1.0;      // > 0
  double beta = 2.0;   // beta > b > 0
  double b = 1.0;
  double gamma = 0.0;  // level of the ramp
  double theta = 0.75; // cutoff plateau fraction, in (1/2, 1)
  double R = 1.0;      // cutoff radius
  double eps = 0.1;    // ramp width (lambda = 1 from gamma + eps on)
  double sigma = 0.0;
  double alpha = 0.0;
};

/// Z = -psi^2 lambda(u) F(v, r) grad u with v = beta (1+r)^sigma - u,
/// cutoff psi (1 on B_{theta R}, 0 outside B_R, |psi'| <= 2/((1-theta)R)),
/// ramp lambda (0 up to gamma+eps/2, 1 from gamma+eps), and the case F:
///   i/ii: exp(-q v (1+r)^-eta),  eta = alpha + 2(sigma-1)
///   iii : exp(-q v^((sigma-eta)/sigma))
///   iv  : v^-q
///   para: e^u            (the parabolicity test field)
/// Throws std::domain_error if v <= 0 is hit where the prefactor is nonzero.
TestField build_test_field(const TestFieldSpec& spec, const ScalarField& u, const Vector& center);

/// Cubic ramp satisfying lambda = 0 on (-inf, gamma+eps/2], 1 on
/// [gamma+eps, inf), nondecreasing.
double level_ramp(double u, double gamma, double eps);

/// The per-case choice of q used in the divergence estimates, for
/// tau in (0,1) and a positive infimum K:
///   i/ii: tau 4 l K / (beta^2 (2-sigma-alpha)^2)
///   iii : tau 4 l K (beta-b)^(eta/sigma) / (beta^2 sigma (2-sigma-alpha))
///   iv  : tau 4 (beta-b) l K / (beta^2 sigma^2)
double case_q(TestFieldCase field_case, double tau, int ell, double K, double beta, double b,
              double sigma, double alpha);

struct MaxPrincipleOptions {
  double tolerance = 1e-9;        // verdict slack
  double I_threshold_rel = 1e-10; // relative threshold for I > 0
  Vector center;                  // distance origin (defaults to 0)
};

struct PrincipleReport {
  double K_estimate = 0.0;  // sampled ess-inf of [1+r]^alpha (p_minus - h |grad u|)
  double C_value = 0.0;
  double u_hat = 0.0;
  double bound_rhs = 0.0;  // C max(u_hat, 0) / ell
  double I_value = 0.0;
  bool I_positive = false;
  bool I_borderline = false;
  int points_in_level_set = 0;
  bool consistent = false;
  double tolerance = 0.0;
  GrowthParams growth;
};

/// Necessary-condition audit of the maximum principle at infinity on the
/// sampled varifold: K_estimate is a min over quadrature points, compared
/// against C(sigma, alpha, d0) max(u_hat, 0) / ell.
/// Throws std::invalid_argument on an empty level set or when the (dilated)
/// boundary meets {u > gamma}.
PrincipleReport audit_max_principle(const DiscreteVarifold& V, const ScalarField& u, double h,
                                    const GrowthParams& gp, double gamma,
                                    const MaxPrincipleOptions& opt = {});

struct EnclosureBound {
  char case_tag = 'A';      // 'A' (Lambda^2 >= c) or 'B'
  double bound = 0.0;       // guaranteed lower bound on dist(spt ||Sigma||, bdry)
  bool nonexistence = false;  // case A with no boundary
};

/// Distance bound of the barrier principle: case A returns the boundary
/// distance itself (nonexistence when it is infinite); case B returns
/// min{(Lambda_ell - ||H||)/c, dist}.  Requires H_norm < Lambda_ell.
EnclosureBound enclosure_bounds(double Lambda_ell, double H_norm, double c,
                                double dist_boundary_Sigma);

struct ParabolicOptions {
  int knn = 8;                  // component graph connectivity
  double hypothesis_slack = 1e-9;
  double constancy_tol = 1e-6;  // max spread of u per component
  std::vector<double> radii;    // growth radii; empty = derived from the cloud
  Vector center;
};

struct ParabolicAudit {
  enum class Status { pass, hypothesis_failed, precondition_failed };
  Status status = Status::pass;
  std::string reason;
  std::vector<int> failure_points;      // indices localizing the failure
  int component_count = 0;
  std::vector<double> component_spread; // max-min of u per component
  double fitted_exponent = 0.0;
};

/// Parabolicity audit: checks p_minus(hess u_eps, ell) - h |grad u_eps| >=
/// -eps on the level set for every supplied (u_eps, eps), then asserts the
/// limit field is constant on each connected component (k-NN graph) of
/// spt ||V|| cap {u > gamma}.  Requires the rectifiable flag and a parabolic
/// growth verdict.
ParabolicAudit audit_parabolic(const DiscreteVarifold& V,
                               const std::vector<std::pair<ScalarField, double>>& u_sequence,
                               double h, double gamma, const ParabolicOptions& opt = {});

/// Quadrature check of the integral inequality
///   int_{r0}^{r1} (s - r0)/mass(s) ds  <=  2 int_{r0}^{r1} ds / mass'(s);
/// returns RHS - LHS (>= 0 when the inequality holds).
double rigoli_setti_margin(const std::function<double(double)>& mass,
                           const std::function<double(double)>& mass_derivative, double r0,
                           double r1, int samples = 2001);

struct BartaReport {
  double discrete_inf = 0.0;   // inf over U_eps of -Lap(u* - u)/(u* - u)
  double analytic_floor = 0.0; // ell delta_bar / (6 eps)
  int quotient_vertices = 0;
};

/// Discrete Barta quotient on a triangulated surface (ell = 2 uses the
/// cotangent Laplacian) against the analytic floor ell delta_bar/(6 eps).
/// U_eps = {u > u_star - eps} restricted to interior vertices; requires
/// u < u_star on the mesh and a nonempty U_eps.
BartaReport barta_bound(const TriMesh& mesh, const Vector& u_vertex_values, double u_star,
                        double delta_bar, int ell, double eps);

}  // namespace cmpgeo

#endif  // CMPGEO_PRINCIPLES_HPP
