#include "cmpgeo/domains.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cmpgeo/model_space.hpp"
#include "cmpgeo/ode.hpp"

namespace cmpgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-8;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

DomainSpec DomainSpec::euclidean_ball(int m, double rho) {
  require(m >= 2 && rho > 0, "euclidean_ball: need m >= 2, rho > 0");
  DomainSpec d;
  d.kind = Kind::euclidean_ball;
  d.ambient_dim = m;
  d.rho = rho;
  return d;
}

DomainSpec DomainSpec::space_form_ball(int m, double c, double rho) {
  require(m >= 2 && rho > 0, "space_form_ball: need m >= 2, rho > 0");
  if (c < 0) require(rho < kPi / (2.0 * std::sqrt(-c)), "space_form_ball: rho >= pi/(2 sqrt(-c))");
  DomainSpec d;
  d.kind = Kind::space_form_ball;
  d.ambient_dim = m;
  d.rho = rho;
  d.c = c;
  return d;
}

DomainSpec DomainSpec::cylinder(int m, int s, double rho, double c_fiber) {
  require(m >= 3 && s >= 1 && s < m - 1, "cylinder: need 1 <= s < m-1");
  require(rho > 0, "cylinder: rho must be > 0");
  if (c_fiber < 0)
    require(rho < kPi / (2.0 * std::sqrt(-c_fiber)), "cylinder: rho >= pi/(2 sqrt(-c))");
  DomainSpec d;
  d.kind = Kind::cylinder;
  d.ambient_dim = m;
  d.s = s;
  d.rho = rho;
  d.c = c_fiber;
  return d;
}

DomainSpec DomainSpec::euclidean_cone(const Vector& axis, double theta) {
  require(axis.size() >= 2, "euclidean_cone: ambient dimension must be >= 2");
  require(theta > 0 && theta < kPi / 2, "euclidean_cone: theta must lie in (0, pi/2)");
  require(axis.norm() > 0, "euclidean_cone: axis must be nonzero");
  DomainSpec d;
  d.kind = Kind::euclidean_cone;
  d.ambient_dim = static_cast<int>(axis.size());
  d.axis = axis / axis.norm();
  d.theta = theta;
  return d;
}

DomainSpec DomainSpec::horoball(int m, double a) {
  require(m >= 2 && a > 0, "horoball: need m >= 2, a > 0");
  DomainSpec d;
  d.kind = Kind::horoball;
  d.ambient_dim = m;
  d.a = a;
  d.c = 1.0;  // hyperbolic ambient, Ric >= -1
  return d;
}

DomainSpec DomainSpec::slab(int m, double width) {
  require(m >= 2 && width > 0, "slab: need m >= 2, width > 0");
  DomainSpec d;
  d.kind = Kind::slab;
  d.ambient_dim = m;
  d.width = width;
  return d;
}

DomainSpec DomainSpec::ds_cone_region(int m, int s, double c_ds) {
  require(s >= 1 && s < m, "ds_cone_region: need 1 <= s < m");
  require(c_ds > 0, "ds_cone_region: c_ds must be > 0");
  DomainSpec d;
  d.kind = Kind::ds_cone_region;
  d.ambient_dim = m;
  d.s = s;
  d.c_ds = c_ds;
  return d;
}

double DomainSpec::reach() const {
  switch (kind) {
    case Kind::euclidean_ball:
    case Kind::space_form_ball:
    case Kind::cylinder:
      return rho;
    case Kind::slab:
      return width / 2;
    case Kind::horoball:
      return std::numeric_limits<double>::infinity();
    default:
      throw std::domain_error("reach: not uniform for this domain kind");
  }
}

Vector DomainSpec::point_at_distance(double r) const {
  if (!(r >= 0) || r >= reach())
    throw std::domain_error("point_at_distance: r outside [0, reach)");
  Vector x = Vector::Zero(ambient_dim);
  switch (kind) {
    case Kind::euclidean_ball:
    case Kind::space_form_ball:
      x[0] = rho - r;
      return x;
    case Kind::cylinder:
      x[ambient_dim - 1] = rho - r;
      return x;
    case Kind::slab:
      x[ambient_dim - 1] = width / 2 - r;
      return x;
    case Kind::horoball:
      x[ambient_dim - 1] = a * std::exp(r);
      return x;
    default:
      throw std::domain_error("point_at_distance: unsupported domain kind");
  }
}

Matrix boundary_shape_operator(const DomainSpec& d, const Vector& y) {
  const int m = d.ambient_dim;
  if (y.size() != m) throw std::invalid_argument("boundary_shape_operator: dimension mismatch");
  const int bdim = m - 1;
  Matrix II = Matrix::Zero(bdim, bdim);
  switch (d.kind) {
    case DomainSpec::Kind::euclidean_ball: {
      if (std::abs(y.norm() - d.rho) > kBoundaryTol * std::max(1.0, d.rho))
        throw std::domain_error("boundary_shape_operator: y not on the sphere");
      II = Matrix::Identity(bdim, bdim) / d.rho;
      return II;
    }
    case DomainSpec::Kind::space_form_ball: {
      if (std::abs(y.norm() - d.rho) > kBoundaryTol * std::max(1.0, d.rho))
        throw std::domain_error("boundary_shape_operator: y not on the sphere");
      II = Matrix::Identity(bdim, bdim) * (cn(d.c, d.rho) / sn(d.c, d.rho));
      return II;
    }
    case DomainSpec::Kind::cylinder: {
      const double fn = y.tail(m - d.s).norm();
      if (std::abs(fn - d.rho) > kBoundaryTol * std::max(1.0, d.rho))
        throw std::domain_error("boundary_shape_operator: y not on the cylinder boundary");
      // s flat directions, then the fiber-sphere directions.
      const double kappa = cn(d.c, d.rho) / sn(d.c, d.rho);
      for (int i = d.s; i < bdim; ++i) II(i, i) = kappa;
      return II;
    }
    case DomainSpec::Kind::euclidean_cone: {
      const double yn = y.norm();
      if (yn < kBoundaryTol) throw std::domain_error("boundary_shape_operator: apex is singular");
      const double cosang = y.dot(d.axis) / yn;
      if (std::abs(cosang - std::cos(d.theta)) > kBoundaryTol)
        throw std::domain_error("boundary_shape_operator: y not on the cone");
      // Zero along the ray through y, cot(theta)/|y| on the m-2 others.
      const double kappa = 1.0 / (std::tan(d.theta) * yn);
      for (int i = 1; i < bdim; ++i) II(i, i) = kappa;
      return II;
    }
    case DomainSpec::Kind::horoball: {
      if (std::abs(y[m - 1] - d.a) > kBoundaryTol * std::max(1.0, d.a))
        throw std::domain_error("boundary_shape_operator: y not on the horosphere");
      return Matrix::Identity(bdim, bdim);
    }
    case DomainSpec::Kind::slab: {
      if (std::abs(std::abs(y[m - 1]) - d.width / 2) > kBoundaryTol * std::max(1.0, d.width))
        throw std::domain_error("boundary_shape_operator: y not on the slab boundary");
      return II;  // hyperplanes are totally geodesic
    }
    default:
      throw std::domain_error("boundary_shape_operator: no closed form for this kind");
  }
}

DistanceJet distance_hessian(const DomainSpec& d, const Vector& x) {
  const int m = d.ambient_dim;
  if (x.size() != m) throw std::invalid_argument("distance_hessian: dimension mismatch");
  DistanceJet jet;
  switch (d.kind) {
    case DomainSpec::Kind::euclidean_ball: {
      const double n = x.norm();
      if (n <= 0 || n >= d.rho) throw std::domain_error("distance_hessian: x outside (0, rho)");
      const Vector xhat = x / n;
      jet.r = d.rho - n;
      jet.grad = -xhat;
      jet.hess = -(Matrix::Identity(m, m) - xhat * xhat.transpose()) / n;
      return jet;
    }
    case DomainSpec::Kind::space_form_ball: {
      const double dist = x.norm();  // geodesic distance from the center
      if (dist <= 0 || dist >= d.rho)
        throw std::domain_error("distance_hessian: x outside (0, rho)");
      const Vector xhat = x / dist;
      jet.r = d.rho - dist;
      jet.grad = -xhat;
      jet.hess = -(cn(d.c, dist) / sn(d.c, dist)) *
                 (Matrix::Identity(m, m) - xhat * xhat.transpose());
      return jet;
    }
    case DomainSpec::Kind::cylinder: {
      if (d.c != 0.0)
        throw std::domain_error("distance_hessian: cylinder supported for flat fiber only");
      const Vector xf = x.tail(m - d.s);
      const double n = xf.norm();
      if (n <= 0 || n >= d.rho) throw std::domain_error("distance_hessian: x outside the collar");
      jet.r = d.rho - n;
      jet.grad = Vector::Zero(m);
      jet.grad.tail(m - d.s) = -xf / n;
      jet.hess = Matrix::Zero(m, m);
      const Matrix pf = Matrix::Identity(m - d.s, m - d.s) - (xf / n) * (xf / n).transpose();
      jet.hess.bottomRightCorner(m - d.s, m - d.s) = -pf / n;
      return jet;
    }
    case DomainSpec::Kind::euclidean_cone: {
      const double t = x.dot(d.axis);
      const Vector w = x - t * d.axis;
      const double wn = w.norm();
      if (wn < 1e-12)
        throw std::domain_error("distance_hessian: cone axis is the cut locus");
      const double phi = std::atan2(wn, t);
      if (phi >= d.theta) throw std::domain_error("distance_hessian: x not inside the cone");
      const Vector what = w / wn;
      const double xn = x.norm();
      jet.r = xn * std::sin(d.theta - phi);
      const double foot = xn * std::cos(d.theta - phi);  // |nearest boundary point|
      jet.grad = std::sin(d.theta) * d.axis - std::cos(d.theta) * what;
      const double cot = 1.0 / std::tan(d.theta);
      const double kappa = -cot / (foot - jet.r * cot);
      Matrix P = Matrix::Identity(m, m) - d.axis * d.axis.transpose() - what * what.transpose();
      jet.hess = kappa * P;
      return jet;
    }
    case DomainSpec::Kind::horoball: {
      if (x[m - 1] <= d.a) throw std::domain_error("distance_hessian: x outside the horoball");
      jet.r = std::log(x[m - 1] / d.a);
      jet.grad = Vector::Unit(m, m - 1);  // adapted orthonormal frame
      jet.hess = -(Matrix::Identity(m, m) - jet.grad * jet.grad.transpose());
      return jet;
    }
    case DomainSpec::Kind::slab: {
      const double xm = x[m - 1];
      if (std::abs(xm) >= d.width / 2)
        throw std::domain_error("distance_hessian: x outside the slab");
      jet.r = d.width / 2 - std::abs(xm);
      // One-sided convention at the midplane (the cut locus): sign(0) = +1.
      jet.grad = Vector::Zero(m);
      jet.grad[m - 1] = xm >= 0 ? -1.0 : 1.0;
      jet.hess = Matrix::Zero(m, m);
      return jet;
    }
    default:
      throw std::domain_error("distance_hessian: no closed form for this kind");
  }
}

DsJet ds_cone_function(int m, int s, double c_ds, const Vector& x) {
  if (s < 1 || s >= m) throw std::invalid_argument("ds_cone_function: need 1 <= s < m");
  if (!(c_ds > 0)) throw std::invalid_argument("ds_cone_function: c_ds must be > 0");
  if (x.size() != m) throw std::invalid_argument("ds_cone_function: dimension mismatch");
  DsJet jet;
  const Vector xp = x.head(s);
  const Vector xpp = x.tail(m - s);
  jet.u = xpp.squaredNorm() - c_ds * xp.squaredNorm();
  jet.grad = Vector::Zero(m);
  jet.grad.head(s) = -2.0 * c_ds * xp;
  jet.grad.tail(m - s) = 2.0 * xpp;
  jet.hess = Matrix::Zero(m, m);
  jet.hess.topLeftCorner(s, s) = -2.0 * c_ds * Matrix::Identity(s, s);
  jet.hess.bottomRightCorner(m - s, m - s) = 2.0 * Matrix::Identity(m - s, m - s);
  return jet;
}

double cylinder_min_mean_curvature(int ell, int s, double c, double r) {
  if (!(ell > s && s >= 1)) throw std::invalid_argument("cylinder_min_mean_curvature: need ell > s >= 1");
  if (!(r > 0)) throw std::invalid_argument("cylinder_min_mean_curvature: r must be > 0");
  if (c < 0 && !(r < kPi / (2.0 * std::sqrt(-c))))
    throw std::invalid_argument("cylinder_min_mean_curvature: r >= pi/(2 sqrt(-c))");
  return (static_cast<double>(ell - s) / ell) * cn(c, r) / sn(c, r);
}

// ---------------------------------------------------------------------------
// Samplers

namespace {

// Two orthonormal tangent vectors at a unit direction w on S^2 in R^3.
void sphere_tangents(const Vector& w, Vector& t1, Vector& t2) {
  Vector e = Vector::Zero(3);
  e[std::abs(w[0]) < 0.9 ? 0 : 1] = 1.0;
  t1 = e - w * w.dot(e);
  t1.normalize();
  t2 = Vector(3);
  t2[0] = w[1] * t1[2] - w[2] * t1[1];
  t2[1] = w[2] * t1[0] - w[0] * t1[2];
  t2[2] = w[0] * t1[1] - w[1] * t1[0];
}

// Fibonacci lattice on the unit 2-sphere.
std::vector<Vector> fibonacci_sphere(int n) {
  std::vector<Vector> pts(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    Vector p(3);
    p << rad * std::cos(phi), rad * std::sin(phi), z;
    pts[i] = p;
  }
  return pts;
}

DiscreteVarifold sample_round_sphere(double rho, int n) {
  DiscreteVarifold V;
  V.ell = 2;
  V.points.resize(3, n);
  V.weights.resize(n);
  V.planes.resize(n);
  V.boundary.assign(n, 0);
  const double w = 4.0 * kPi * rho * rho / n;
  const auto dirs = fibonacci_sphere(n);
  for (int i = 0; i < n; ++i) {
    V.points.col(i) = rho * dirs[i];
    V.weights[i] = w;
    Vector t1, t2;
    sphere_tangents(dirs[i], t1, t2);
    Matrix frame(3, 2);
    frame.col(0) = t1;
    frame.col(1) = t2;
    V.planes[i] = frame;
  }
  return V;
}

DiscreteVarifold sample_plane_disk(double radius, int nr) {
  // Rings of width dr with ~2 pi r / dr cells each, so the in-plane spacing
  // is near-isotropic (the k-NN component graphs depend on it).  Cell
  // weights are exact annulus sectors: ball masses at ring boundaries are
  // exact.
  const double dr = radius / nr;
  std::vector<int> nphi(nr);
  int n = 0;
  for (int i = 0; i < nr; ++i) {
    const double rmid = (i + 0.5) * dr;
    nphi[i] = std::max(8, static_cast<int>(std::lround(2.0 * kPi * rmid / dr)));
    n += nphi[i];
  }
  DiscreteVarifold V;
  V.ell = 2;
  V.points.resize(3, n);
  V.weights.resize(n);
  V.planes.resize(n);
  V.boundary.assign(n, 0);
  Matrix frame(3, 2);
  frame.setZero();
  frame(0, 0) = 1.0;
  frame(1, 1) = 1.0;
  int idx = 0;
  for (int i = 0; i < nr; ++i) {
    const double r_in = i * dr, r_out = (i + 1) * dr;
    const double rmid = 0.5 * (r_in + r_out);
    const double dphi = 2.0 * kPi / nphi[i];
    const double cell = 0.5 * (r_out * r_out - r_in * r_in) * dphi;
    for (int j = 0; j < nphi[i]; ++j, ++idx) {
      const double phi = (j + 0.5) * dphi;
      V.points.col(idx) << rmid * std::cos(phi), rmid * std::sin(phi), 0.0;
      V.weights[idx] = cell;
      V.planes[idx] = frame;
      if (i == nr - 1) V.boundary[idx] = 1;
    }
  }
  return V;
}

DiscreteVarifold sample_catenoid2d(double a, double t_max, int nt) {
  const int nphi = std::max(96, nt / 4);
  DiscreteVarifold V;
  V.ell = 2;
  const int n = nt * nphi;
  V.points.resize(3, n);
  V.weights.resize(n);
  V.planes.resize(n);
  V.boundary.assign(n, 0);
  const double dt = 2.0 * t_max / nt, dphi = 2.0 * kPi / nphi;
  int idx = 0;
  for (int i = 0; i < nt; ++i) {
    const double t = -t_max + (i + 0.5) * dt;
    const double ch = std::cosh(t / a), sh = std::sinh(t / a);
    const double cell = a * ch * ch * dt * dphi;
    for (int j = 0; j < nphi; ++j, ++idx) {
      const double phi = j * dphi;
      const double cp = std::cos(phi), sp = std::sin(phi);
      V.points.col(idx) << a * ch * cp, a * ch * sp, t;
      V.weights[idx] = cell;
      Matrix frame(3, 2);
      frame.col(0) << sh * cp / ch, sh * sp / ch, 1.0 / ch;  // d/dt, normalized
      frame.col(1) << -sp, cp, 0.0;                          // d/dphi, normalized
      V.planes[idx] = frame;
      if (i == 0 || i == nt - 1) V.boundary[idx] = 1;
    }
  }
  return V;
}

// Profile of the rotationally symmetric minimal hypersurface in R^4 with
// neck radius a: f(s) = a cosh(s), z'(s) = a / sqrt(cosh(s)^2 + 1) (from the
// first integral f^2/sqrt(1+(df/dz)^2) = a^2).  z stays bounded: the surface
// lies in a slab.
struct Catenoid3dProfile {
  std::vector<double> s, f, z;
};

Catenoid3dProfile catenoid3d_profile(double a, double s_max, int ns) {
  Catenoid3dProfile prof;
  prof.s.resize(ns);
  prof.f.resize(ns);
  const double ds = s_max / ns;
  for (int i = 0; i < ns; ++i) {
    prof.s[i] = (i + 0.5) * ds;
    prof.f[i] = a * std::cosh(prof.s[i]);
  }
  OdeRhs rhs = [a](double s, const Vector&, Vector& dy) {
    const double ch = std::cosh(s);
    dy[0] = a / std::sqrt(ch * ch + 1.0);
  };
  OdeOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  prof.z.reserve(ns);
  ode_integrate_sampled(rhs, 0.0, Vector::Zero(1), prof.s, opt,
                        [&](double, const Vector& y) { prof.z.push_back(y[0]); });
  return prof;
}

DiscreteVarifold sample_catenoid3d(double a, double s_max, int ns) {
  const int nomega = std::max(128, (3 * ns) / 2);
  const auto prof = catenoid3d_profile(a, s_max, ns);
  const auto dirs = fibonacci_sphere(nomega);
  const double ds = s_max / ns;
  const double womega = 4.0 * kPi / nomega;

  DiscreteVarifold V;
  V.ell = 3;
  const int n = 2 * ns * nomega;
  V.points.resize(4, n);
  V.weights.resize(n);
  V.planes.resize(n);
  V.boundary.assign(n, 0);

  int idx = 0;
  for (int sheet = 0; sheet < 2; ++sheet) {
    const double zsign = sheet == 0 ? 1.0 : -1.0;
    for (int i = 0; i < ns; ++i) {
      const double s = prof.s[i];
      const double ch = std::cosh(s), sh = std::sinh(s);
      const double f = prof.f[i];
      // dA = a^3 cosh(s)^4 / sqrt(cosh(s)^2 + 1) ds domega
      const double cell = a * a * a * ch * ch * ch * ch / std::sqrt(ch * ch + 1.0) * ds * womega;
      const double zp = a / std::sqrt(ch * ch + 1.0);  // dz/ds
      const double mer_norm = std::sqrt(a * a * sh * sh + zp * zp);
      for (int j = 0; j < nomega; ++j, ++idx) {
        const Vector& w = dirs[j];
        V.points.col(idx) << f * w[0], f * w[1], f * w[2], zsign * prof.z[i];
        V.weights[idx] = cell;
        Vector t1, t2;
        sphere_tangents(w, t1, t2);
        Matrix frame(4, 3);
        frame.col(0) << t1[0], t1[1], t1[2], 0.0;
        frame.col(1) << t2[0], t2[1], t2[2], 0.0;
        frame.col(2) << (a * sh / mer_norm) * w[0], (a * sh / mer_norm) * w[1],
            (a * sh / mer_norm) * w[2], zsign * zp / mer_norm;
        V.planes[idx] = frame;
        if (i == ns - 1) V.boundary[idx] = 1;
      }
    }
  }
  return V;
}

int default_resolution(SampleKind k) {
  switch (k) {
    case SampleKind::plane_disk: return 160;
    case SampleKind::round_sphere: return 10000;
    case SampleKind::catenoid2d: return 512;
    case SampleKind::catenoid3d: return 220;
  }
  return 0;
}

// Nonuniform 3-point first and second derivative at interior node i.
void fd_derivatives(const std::vector<double>& x, const std::vector<double>& y, size_t i,
                    double& d1, double& d2) {
  const double hm = x[i] - x[i - 1], hp = x[i + 1] - x[i];
  const double denom = hp * hm * (hp + hm);
  d1 = (hm * hm * y[i + 1] + (hp * hp - hm * hm) * y[i] - hp * hp * y[i - 1]) / denom;
  d2 = 2.0 * (hm * y[i + 1] - (hp + hm) * y[i] + hp * y[i - 1]) / denom;
}

}  // namespace

SampleKind parse_sample_kind(const std::string& name) {
  if (name == "plane") return SampleKind::plane_disk;
  if (name == "sphere") return SampleKind::round_sphere;
  if (name == "catenoid2d") return SampleKind::catenoid2d;
  if (name == "catenoid3d") return SampleKind::catenoid3d;
  throw std::invalid_argument("unknown sample kind: " + name);
}

const char* to_string(SampleKind k) {
  switch (k) {
    case SampleKind::plane_disk: return "plane";
    case SampleKind::round_sphere: return "sphere";
    case SampleKind::catenoid2d: return "catenoid2d";
    case SampleKind::catenoid3d: return "catenoid3d";
  }
  return "?";
}

DiscreteVarifold sample_submanifold(const SampleSpec& spec) {
  const int res = spec.resolution > 0 ? spec.resolution : default_resolution(spec.kind);
  if (res < 8) throw std::invalid_argument("sample_submanifold: resolution too small");
  DiscreteVarifold V;
  switch (spec.kind) {
    case SampleKind::plane_disk:
      V = sample_plane_disk(spec.size, res);  // size = disk radius
      break;
    case SampleKind::round_sphere:
      V = sample_round_sphere(spec.size, res);
      break;
    case SampleKind::catenoid2d:
      V = sample_catenoid2d(spec.size, spec.extent, res);
      break;
    case SampleKind::catenoid3d:
      V = sample_catenoid3d(spec.size, spec.extent, res);
      break;
  }
  V.validate();
  return V;
}

DiscreteVarifold sample_graph(const std::function<double(double, double)>& fn, double half_extent,
                              int n) {
  if (n < 2) throw std::invalid_argument("sample_graph: n must be >= 2");
  DiscreteVarifold V;
  V.ell = 2;
  const int total = n * n;
  V.points.resize(3, total);
  V.weights.resize(total);
  V.planes.resize(total);
  V.boundary.assign(total, 0);
  const double h = 2.0 * half_extent / n;
  const double eps = 1e-6 * std::max(1.0, half_extent);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j, ++idx) {
      const double x = -half_extent + (i + 0.5) * h;
      const double y = -half_extent + (j + 0.5) * h;
      const double fx = (fn(x + eps, y) - fn(x - eps, y)) / (2 * eps);
      const double fy = (fn(x, y + eps) - fn(x, y - eps)) / (2 * eps);
      V.points.col(idx) << x, y, fn(x, y);
      V.weights[idx] = h * h * std::sqrt(1.0 + fx * fx + fy * fy);
      Vector t1(3), t2(3);
      t1 << 1.0, 0.0, fx;
      t1.normalize();
      t2 << 0.0, 1.0, fy;
      t2 -= t1 * t1.dot(t2);
      t2.normalize();
      Matrix frame(3, 2);
      frame.col(0) = t1;
      frame.col(1) = t2;
      V.planes[idx] = frame;
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) V.boundary[idx] = 1;
    }
  }
  V.validate();
  return V;
}

double minimality_residual(const SampleSpec& spec) {
  const int res = spec.resolution > 0 ? spec.resolution : default_resolution(spec.kind);
  const double a = spec.size;
  switch (spec.kind) {
    case SampleKind::plane_disk:
      return 0.0;
    case SampleKind::round_sphere:
      return 1.0 / spec.size;  // the sphere is not minimal; |H| = 1/rho
    case SampleKind::catenoid2d: {
      // Reconstruct f(z) = a cosh(z/a) from the sampled profile values.
      const int nt = res;
      std::vector<double> z(nt), f(nt);
      const double dt = 2.0 * spec.extent / nt;
      for (int i = 0; i < nt; ++i) {
        z[i] = -spec.extent + (i + 0.5) * dt;
        f[i] = a * std::cosh(z[i] / a);
      }
      double worst = 0.0;
      for (size_t i = 1; i + 1 < z.size(); ++i) {
        double d1, d2;
        fd_derivatives(z, f, i, d1, d2);
        const double q = 1.0 + d1 * d1;
        const double H = 0.5 * (-d2 / std::pow(q, 1.5) + 1.0 / (f[i] * std::sqrt(q)));
        worst = std::max(worst, std::abs(H));
      }
      return worst;
    }
    case SampleKind::catenoid3d: {
      const auto prof = catenoid3d_profile(a, spec.extent, res);
      double worst = 0.0;
      for (size_t i = 1; i + 1 < prof.z.size(); ++i) {
        double d1, d2;
        fd_derivatives(prof.z, prof.f, i, d1, d2);
        const double q = 1.0 + d1 * d1;
        const double H =
            (-d2 / std::pow(q, 1.5) + 2.0 / (prof.f[i] * std::sqrt(q))) / 3.0;
        worst = std::max(worst, std::abs(H));
      }
      return worst;
    }
  }
  return 0.0;
}

}  // namespace cmpgeo
