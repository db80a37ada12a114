// Model ambient spaces and domains with closed-form distance functions and
// shape operators, the Dierkes-Schwab cone function, and samplers for the
// test submanifolds (sphere, plane disk, catenoids).
//
// Coordinate conventions
//  - Flat kinds (euclidean_ball, cylinder with flat fiber, euclidean_cone,
//    slab, ds_cone_region): positions, gradients and Hessians are plain
//    Euclidean coordinates; Hessians can be audited by finite differences.
//  - Curved model kinds (space_form_ball, horoball): the query point fixes
//    an adapted orthonormal frame and grad/hess are expressed in it.  For
//    space_form_ball the coordinate vector means "geodesic distance |x| from
//    the center in direction x/|x|"; for the horoball, upper-half-space
//    coordinates {x_m > 0} with the horoball {x_m > a} centered at infinity,
//    r = log(x_m/a), and the inward second fundamental form of the
//    horosphere equal to +I.

#ifndef CMPGEO_DOMAINS_HPP
#define CMPGEO_DOMAINS_HPP

#include <functional>

#include "cmpgeo/varifold.hpp"

namespace cmpgeo {

struct DomainSpec {
  enum class Kind {
    euclidean_ball,
    space_form_ball,
    cylinder,
    euclidean_cone,
    horoball,
    slab,
    ds_cone_region
  };

  Kind kind = Kind::euclidean_ball;
  int ambient_dim = 3;
  double rho = 1.0;    // ball / cylinder fiber radius
  double c = 0.0;      // model curvature (space form ball, cylinder fiber)
  int s = 1;           // flat factor dimension (cylinder, ds cone)
  Vector axis;         // cone axis (unit)
  double theta = 0.0;  // cone half-angle in (0, pi/2)
  double width = 1.0;  // slab width; slab = {|x_m| < width/2}
  double a = 1.0;      // horoball level {x_m > a}
  double c_ds = 0.0;   // Dierkes-Schwab parameter

  static DomainSpec euclidean_ball(int m, double rho);
  static DomainSpec space_form_ball(int m, double c, double rho);
  static DomainSpec cylinder(int m, int s, double rho, double c_fiber);
  static DomainSpec euclidean_cone(const Vector& axis, double theta);
  static DomainSpec horoball(int m, double a = 1.0);
  static DomainSpec slab(int m, double width);
  static DomainSpec ds_cone_region(int m, int s, double c_ds);

  /// Largest boundary distance before the model's cut locus (inf if none).
  double reach() const;
  /// Canonical interior point at boundary distance r (for grid audits).
  Vector point_at_distance(double r) const;
};

/// Inward second fundamental form of the boundary at y, as a symmetric form
/// of size (m-1) on the boundary tangent space.  Throws when y is off the
/// boundary (1e-8 relative projection tolerance) or the kind has no closed
/// form (ds_cone_region).
Matrix boundary_shape_operator(const DomainSpec& d, const Vector& y);

struct DistanceJet {
  double r;     // signed distance to the boundary (positive inside)
  Vector grad;  // unit gradient of r
  Matrix hess;  // Hessian of r; grad is always in its kernel
};

/// Closed-form distance to the boundary and its Hessian at an interior
/// point within the reach.  Throws std::domain_error outside the valid
/// region.
DistanceJet distance_hessian(const DomainSpec& d, const Vector& x);

struct DsJet {
  double u;
  Vector grad;
  Matrix hess;
};

/// The Dierkes-Schwab function u = |x''|^2 - c |x'|^2 on R^s x R^(m-s).
DsJet ds_cone_function(int m, int s, double c_ds, const Vector& x);

/// ((ell-s)/ell) cn_c(r)/sn_c(r): the sharp lower bound on the sup-norm of
/// the normalized mean curvature of an ell-submanifold inside the cylinder
/// R^s x B_r with fiber curvature -c.  Requires ell > s, r > 0, and
/// r < pi/(2 sqrt(-c)) when c < 0.
double cylinder_min_mean_curvature(int ell, int s, double c, double r);

// ---------------------------------------------------------------------------
// Test submanifold samplers (discrete varifolds with tangent frames).

enum class SampleKind { plane_disk, round_sphere, catenoid2d, catenoid3d };

struct SampleSpec {
  SampleKind kind = SampleKind::round_sphere;
  double size = 1.0;     // sphere/disk radius, catenoid neck radius a
  double extent = 5.5;   // catenoid profile parameter range
  int resolution = 0;    // 0 = kind default
};

SampleKind parse_sample_kind(const std::string& name);
const char* to_string(SampleKind k);

/// Point cloud + orthonormal tangent frames + quadrature weights
/// approximating the area measure.  Deterministic for fixed spec.
DiscreteVarifold sample_submanifold(const SampleSpec& spec);

/// Graph of fn over [-half_extent, half_extent]^2 sampled on an n x n grid
/// (ell = 2 in R^3), with finite-difference frames and area weights.
DiscreteVarifold sample_graph(const std::function<double(double, double)>& fn, double half_extent,
                              int n);

/// Discrete mean-curvature residual of a sampled minimal example: curvature
/// of the sampled profile reconstructed by (nonuniform) central differences.
/// Quantifies discretization, not the continuum surface.
double minimality_residual(const SampleSpec& spec);

}  // namespace cmpgeo

#endif  // CMPGEO_DOMAINS_HPP
