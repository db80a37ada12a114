#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cmpgeo/principles.hpp"
#include "support/test_helpers.hpp"

using namespace cmpgeo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant table C(sigma, alpha, d0)") {
  CHECK(constant_C(0.0, -1.0, 5.0, true) == 0.0);
  CHECK(constant_C(1.0, 0.0, 2.0, true) == doctest::Approx(2.0));
  CHECK(constant_C(2.0, 0.0, 1.0, true) == doctest::Approx(2.0));
  CHECK(constant_C(1.0, -1.0, 2.0, true) == doctest::Approx(2.0 * 4.0));  // d0 (2-s-a)^2
  CHECK(constant_C(1.5, 0.4, 3.0, true) ==
        doctest::Approx(3.0 * 1.5 * (2.0 - 1.5 - 0.4)));  // alpha >= 2(1-sigma)
  CHECK(constant_C(2.0, 0.0, 0.0, true) == 0.0);          // sigma + d0 < 2 at the poli case? 2+0=2 -> boundary
  CHECK(constant_C(1.0, 1.0, 0.5, true) == 0.0);          // alpha = 2-sigma, sigma+d0 < 2
  CHECK(constant_C(1.0, 0.0, 7.0, false) == 0.0);         // I = 0 wins over everything

  SUBCASE("continuity across alpha = 2(1 - sigma)") {
    for (double sigma : {0.3, 0.8, 1.2}) {
      for (double d0 : {0.5, 2.0}) {
        const double a = 2.0 * (1.0 - sigma);
        const double below = constant_C(sigma, a - 1e-13, d0, true);
        const double at = constant_C(sigma, a, d0, true);
        CHECK(std::abs(below - at) < 1e-10);
        CHECK(at == doctest::Approx(d0 * sigma * sigma).epsilon(1e-9));
      }
    }
  }
  SUBCASE("monotone in d0 in every branch") {
    for (double sigma : {0.0, 0.5, 1.0, 2.0}) {
      for (double alpha : {-1.0, 0.0, 2.0 - sigma}) {
        double prev = -1.0;
        for (double d0 : {0.0, 0.5, 1.0, 2.0, 4.0}) {
          const double c = constant_C(sigma, alpha, d0, true);
          CHECK(c >= prev - 1e-15);
          prev = c;
        }
      }
    }
  }
  SUBCASE("domain validation") {
    CHECK_THROWS_AS((void)constant_C(-0.1, 0.0, 1.0, true), std::invalid_argument);
    CHECK_THROWS_AS((void)constant_C(1.0, 1.5, 1.0, true), std::invalid_argument);
    CHECK_THROWS_AS((void)constant_C(1.0, 0.0, -1.0, true), std::invalid_argument);
  }
}

TEST_CASE("test-field construction") {
  const int m = 3;
  const ScalarField u = coordinate_field(m, 0);
  TestFieldSpec spec;
  spec.field_case = TestFieldCase::i;
  spec.sigma = 1.0;
  spec.alpha = -0.5;
  spec.q = 0.7;
  spec.beta = 2.0;
  spec.b = 1.0;
  spec.gamma = 0.0;
  spec.eps = 0.2;
  spec.theta = 0.75;
  spec.R = 2.0;
  const TestField Z = build_test_field(spec, u, Vector::Zero(m));

  SUBCASE("vanishes outside B_R and on {u <= gamma}") {
    for (int k = 0; k < 200; ++k) {
      Vector x(3);
      x << -1.0 + 0.01 * k, 0.2, 0.1;  // u = x_0
      const double r = x.norm();
      const Vector z = Z.Z(x);
      if (r >= spec.R) CHECK(z.norm() == 0.0);
      if (x[0] <= spec.gamma) CHECK(z.norm() == 0.0);
    }
  }
  SUBCASE("ramp endpoints") {
    CHECK(level_ramp(spec.gamma, spec.gamma, spec.eps) == 0.0);
    CHECK(level_ramp(spec.gamma + spec.eps / 2, spec.gamma, spec.eps) == 0.0);
    CHECK(level_ramp(spec.gamma + spec.eps, spec.gamma, spec.eps) == 1.0);
    double prev = -1;
    for (int i = 0; i <= 50; ++i) {
      const double v = level_ramp(spec.gamma + spec.eps * i / 50.0, spec.gamma, spec.eps);
      CHECK(v >= prev);
      prev = v;
    }
  }
  SUBCASE("invalid specs are rejected") {
    TestFieldSpec bad = spec;
    bad.beta = 0.5;  // beta <= b
    CHECK_THROWS_AS((void)build_test_field(bad, u, Vector::Zero(m)), std::invalid_argument);
    bad = spec;
    bad.q = 0.0;
    CHECK_THROWS_AS((void)build_test_field(bad, u, Vector::Zero(m)), std::invalid_argument);
    bad = spec;
    bad.theta = 0.4;
    CHECK_THROWS_AS((void)build_test_field(bad, u, Vector::Zero(m)), std::invalid_argument);
  }
  SUBCASE("cases iii and iv build finite, supported fields") {
    TestFieldSpec s3 = spec;
    s3.field_case = TestFieldCase::iii;
    s3.sigma = 1.0;
    s3.alpha = 0.5;  // eta = 0.5 >= 0
    const TestField Z3 = build_test_field(s3, u, Vector::Zero(m));
    TestFieldSpec s4 = spec;
    s4.field_case = TestFieldCase::iv;
    s4.sigma = 1.0;
    s4.alpha = 1.0;  // alpha = 2 - sigma
    const TestField Z4 = build_test_field(s4, u, Vector::Zero(m));
    for (const auto& Z : {Z3, Z4}) {
      Vector inside(3);
      inside << 0.5, 0.2, 0.1;  // u = 0.5 > gamma + eps, r < theta R
      const Vector z = Z.Z(inside);
      CHECK(std::isfinite(z.norm()));
      CHECK(z.norm() > 0.0);
      Vector outside(3);
      outside << 2.5, 0, 0;
      CHECK(Z.Z(outside).norm() == 0.0);
    }
  }
  SUBCASE("case-formula q values") {
    // case i: tau 4 l K / (beta^2 (2-sigma-alpha)^2)
    CHECK(case_q(TestFieldCase::i, 0.5, 2, 3.0, 2.0, 1.0, 1.0, -0.5) ==
          doctest::Approx(0.5 * 4 * 2 * 3.0 / (4.0 * 1.5 * 1.5)));
    // case iv: tau 4 (beta-b) l K / (beta^2 sigma^2)
    CHECK(case_q(TestFieldCase::iv, 0.9, 3, 1.0, 2.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(0.9 * 4 * 1.0 * 3 * 1.0 / 4.0));
    for (auto fc : {TestFieldCase::i, TestFieldCase::ii, TestFieldCase::iii, TestFieldCase::iv})
      CHECK(case_q(fc, 0.5, 2, 1.0, 2.0, 1.0, 0.5, 0.25) > 0.0);
    CHECK_THROWS_AS((void)case_q(TestFieldCase::i, 1.5, 2, 1.0, 2.0, 1.0, 0.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)case_q(TestFieldCase::para, 0.5, 2, 1.0, 2.0, 1.0, 0.0, 0.0),
                    std::invalid_argument);
  }
  SUBCASE("v positivity enforced") {
    TestFieldSpec tight = spec;
    tight.field_case = TestFieldCase::ii;
    tight.beta = 1.00001;
    tight.b = 1.0;
    tight.sigma = 0.0;  // v = beta - u can dip under 0 where u > beta
    const TestField Zt = build_test_field(tight, u, Vector::Zero(m));
    Vector x(3);
    x << 1.5, 0, 0;  // u = 1.5 > beta, inside B_R, above the ramp
    CHECK_THROWS_AS((void)Zt.Z(x), std::domain_error);
  }
}

TEST_CASE("parabolic-case field reproduces integration by parts on a flat disk") {
  // V = flat disk, u = x_0; div^W Z expands into three terms whose sum
  // integrates to delta V(Z) = 0 (the disk is stationary).
  SampleSpec sp;
  sp.kind = SampleKind::plane_disk;
  sp.size = 3.0;
  sp.resolution = 80;
  const DiscreteVarifold V = sample_submanifold(sp);
  const ScalarField u = coordinate_field(3, 0);

  TestFieldSpec spec;
  spec.field_case = TestFieldCase::para;
  spec.gamma = 0.0;
  spec.eps = 0.3;
  spec.theta = 0.6;
  spec.R = 2.0;
  const TestField Z = build_test_field(spec, u, Vector::Zero(3));

  const double dv = first_variation(V, Z, 1e-6);
  // analytic expansion: div^W Z = -(2 psi psi' <rhat,e0> lam + psi^2 lam' + psi^2 lam) e^u
  // restricted to the disk plane (|grad^W u| = 1, div^W grad u = 0)
  double expansion = 0.0;
  const double h = 1e-7;
  for (int i = 0; i < V.size(); ++i) {
    const Vector p = V.points.col(i);
    const double r = p.norm();
    const double uval = p[0];
    const double psi = radial_cutoff(r, spec.R, spec.theta);
    if (psi == 0.0) continue;
    const double psip = radial_cutoff_slope(r, spec.R, spec.theta);
    const double lam = level_ramp(uval, spec.gamma, spec.eps);
    const double lamp =
        (level_ramp(uval + h, spec.gamma, spec.eps) - level_ramp(uval - h, spec.gamma, spec.eps)) /
        (2 * h);
    const double rdot = r > 0 ? p[0] / r : 0.0;
    expansion -= V.weights[i] * std::exp(uval) *
                 (2 * psi * psip * rdot * lam + psi * psi * lamp + psi * psi * lam);
  }
  const double scale = std::max(std::abs(dv), std::abs(expansion));
  CHECK(std::abs(dv - expansion) < 0.02 * std::max(scale, 1.0));
}

TEST_CASE("finite-difference field wrapper") {
  // quadratic with known jets
  auto value = [](const Vector& x) {
    return 0.5 * x[0] * x[0] - x[0] * x[1] + 2.0 * x[2] + 1.0;
  };
  const ScalarField f = fd_field(value, 1e-5);
  Vector x(3);
  x << 0.3, -0.7, 1.1;
  Vector grad_exact(3);
  grad_exact << x[0] - x[1], -x[0], 2.0;
  CHECK((f.grad(x) - grad_exact).cwiseAbs().maxCoeff() < 1e-9);
  Matrix hess_exact = Matrix::Zero(3, 3);
  hess_exact(0, 0) = 1.0;
  hess_exact(0, 1) = hess_exact(1, 0) = -1.0;
  CHECK((f.hess(x) - hess_exact).cwiseAbs().maxCoeff() < 1e-5);
  CHECK(f.value(x) == doctest::Approx(value(x)));
}

TEST_CASE("maximum-principle audit") {
  SUBCASE("constant field is consistent") {
    SampleSpec sp;
    sp.kind = SampleKind::round_sphere;
    sp.size = 1.0;
    sp.resolution = 500;
    const DiscreteVarifold V = sample_submanifold(sp);
    ScalarField u;
    u.value = [](const Vector&) { return 1.0; };
    u.grad = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
    u.hess = [](const Vector& x) { return Matrix(Matrix::Zero(x.size(), x.size())); };
    const auto rep = audit_max_principle(V, u, 0.0, {0.0, 0.0, 1.0}, 0.5);
    CHECK(rep.K_estimate == 0.0);
    CHECK(rep.consistent);
    CHECK(!rep.I_positive);
  }
  SUBCASE("strict barrier concentration is violated (the contradiction engine)") {
    // atoms in the collar of a euclidean ball where the certificate gives
    // p_minus(hess u, ell) - h |grad u| >= delta_bar > 0, with bounded u and
    // sigma = 0: C = 0 forces the violated verdict.
    const BarrierCertificate cert = build_barrier({0.0, 2, 0.5, 0.5, 0.0, 1.0});
    const DomainSpec ball = DomainSpec::euclidean_ball(3, 2.0);
    const ScalarField u = barrier_field(cert, ball);
    SampleSpec sp;
    sp.kind = SampleKind::round_sphere;
    sp.size = 1.3;  // inside the collar {1 < |x| < 2}
    sp.resolution = 400;
    const DiscreteVarifold V = sample_submanifold(sp);
    const double gamma = cert.eta(0.9);  // level set covers the sample
    const auto rep = audit_max_principle(V, u, 0.0, {0.0, 0.0, 1.0}, gamma);
    CHECK(rep.K_estimate >= cert.delta_bar - 1e-10);
    CHECK(rep.bound_rhs == 0.0);
    CHECK(!rep.consistent);
  }
  SUBCASE("slab-contained hypersurface with the degenerate slab barrier is consistent") {
    // sigma = 0 makes C = 0; the slab supplies no strict margin (K = 0), so
    // the audit must come out consistent: the slab alone excludes nothing.
    SampleSpec sp;
    sp.kind = SampleKind::catenoid3d;
    sp.size = 1.0;
    sp.extent = 4.0;
    sp.resolution = 48;
    DiscreteVarifold V = sample_submanifold(sp);
    // the complete hypersurface has no boundary; drop the truncation flags
    std::fill(V.boundary.begin(), V.boundary.end(), 0);
    const double width = 3.0;
    BarrierParams p{0.0, V.ell, 0.0, 0.0, 0.0, width / 2};
    const BarrierCertificate cert = build_barrier(p);
    const ScalarField u = barrier_field(cert, DomainSpec::slab(4, width));
    const auto rep = audit_max_principle(V, u, 0.0, {0.0, 0.0, 3.0}, 0.2);
    CHECK(rep.K_estimate <= 1e-12);
    CHECK(rep.K_estimate >= -1e-9);
    CHECK(rep.bound_rhs == 0.0);
    CHECK(rep.consistent);
  }
  SUBCASE("empty level set and boundary collisions are errors") {
    SampleSpec sp;
    sp.kind = SampleKind::plane_disk;
    sp.size = 2.0;
    sp.resolution = 60;
    const DiscreteVarifold V = sample_submanifold(sp);
    const ScalarField u = coordinate_field(3, 2);  // u = x_2 = 0 on the disk
    CHECK_THROWS_AS((void)audit_max_principle(V, u, 0.0, {0.0, 0.0, 1.0}, 0.5),
                    std::invalid_argument);
    const ScalarField w = coordinate_field(3, 0);  // level set reaches the rim
    CHECK_THROWS_AS((void)audit_max_principle(V, w, 0.0, {0.0, 0.0, 1.0}, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("enclosure bounds") {
  SUBCASE("case A returns the boundary distance") {
    const auto b = enclosure_bounds(1.0, 0.0, 0.5, 7.0);
    CHECK(b.case_tag == 'A');
    CHECK(b.bound == 7.0);
    CHECK(!b.nonexistence);
  }
  SUBCASE("case B takes the minimum") {
    const auto b = enclosure_bounds(0.5, 0.1, 1.0, 10.0);
    CHECK(b.case_tag == 'B');
    CHECK(b.bound == doctest::Approx(0.4));
  }
  SUBCASE("boundaryless case A flags nonexistence") {
    const auto b =
        enclosure_bounds(1.0, 0.2, 0.5, std::numeric_limits<double>::infinity());
    CHECK(b.nonexistence);
  }
  SUBCASE("theorem inapplicable when H >= Lambda") {
    CHECK_THROWS_AS((void)enclosure_bounds(0.5, 0.5, 0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("parabolicity audit") {
  SUBCASE("plane with an equidistant test function passes") {
    SampleSpec sp;
    sp.kind = SampleKind::plane_disk;
    sp.size = 12.0;
    sp.resolution = 48;
    DiscreteVarifold V = sample_submanifold(sp);
    std::fill(V.boundary.begin(), V.boundary.end(), 0);  // models the complete plane
    const int m = 3;
    const double d = 2.0;
    ScalarField u;
    u.value = [d](const Vector& x) { return std::abs(x[2] - d); };
    u.grad = [d, m](const Vector& x) {
      Vector g = Vector::Zero(m);
      g[m - 1] = x[m - 1] >= d ? 1.0 : -1.0;
      return g;
    };
    u.hess = [m](const Vector&) { return Matrix(Matrix::Zero(m, m)); };
    const auto audit = audit_parabolic(V, {{u, 1e-2}, {u, 1e-3}}, 0.0, 1.0);
    CHECK(audit.status == ParabolicAudit::Status::pass);
    CHECK(audit.component_count == 1);
    CHECK(audit.component_spread[0] < 1e-9);
  }
  SUBCASE("two components, constant per component") {
    SampleSpec sp;
    sp.kind = SampleKind::plane_disk;
    sp.size = 12.0;
    sp.resolution = 40;
    DiscreteVarifold base = sample_submanifold(sp);
    std::fill(base.boundary.begin(), base.boundary.end(), 0);
    DiscreteVarifold two = base;
    const int n = base.size();
    two.points.resize(3, 2 * n);
    two.weights.resize(2 * n);
    two.planes.resize(2 * n);
    two.boundary.assign(2 * n, 0);
    // offset well above the k-NN spacing but small against the disk radius,
    // so the mass curve stays near-quadratic (parabolic)
    const double gap = 1.5;
    for (int i = 0; i < n; ++i) {
      two.points.col(i) = base.points.col(i);
      Vector shifted = base.points.col(i);
      shifted[2] += gap;
      two.points.col(n + i) = shifted;
      two.weights[i] = two.weights[n + i] = base.weights[i];
      two.planes[i] = two.planes[n + i] = base.planes[i];
    }
    const ScalarField u = coordinate_field(3, 2);  // x_2: 0 on one sheet, 1.5 on the other
    ParabolicOptions popt;
    for (int i = 0; i < 10; ++i) popt.radii.push_back(1.1 + 9.9 * i / 9.0);
    const auto audit = audit_parabolic(two, {{u, 1e-2}}, 0.0, -1.0, popt);
    CHECK(audit.status == ParabolicAudit::Status::pass);
    CHECK(audit.component_count == 2);
  }
  SUBCASE("catenoid2d with a slab barrier: failure is localized") {
    SampleSpec sp;
    sp.kind = SampleKind::catenoid2d;
    sp.size = 1.0;
    sp.extent = 3.0;
    sp.resolution = 96;
    const DiscreteVarifold V = sample_submanifold(sp);  // boundary rings kept
    // slab wide enough to contain the truncated sample
    const double width = 2.0 * 3.0 + 0.5;
    BarrierParams p{0.0, 2, 0.0, 0.0, 0.0, width / 2};
    const BarrierCertificate cert = build_barrier(p);
    const ScalarField u = barrier_field(cert, DomainSpec::slab(3, width));
    // u is maximal near the slab walls, i.e. exactly at the truncation rings:
    // the level set cannot avoid the boundary support and the audit reports it
    const double gamma = cert.eta(1.5);
    ParabolicOptions popt;
    for (int i = 0; i < 10; ++i) popt.radii.push_back(1.1 + 9.9 * i / 9.0);
    const auto audit = audit_parabolic(V, {{u, 1e-2}}, 0.0, gamma, popt);
    CHECK(audit.status != ParabolicAudit::Status::pass);
    CHECK(!audit.failure_points.empty());
  }
  SUBCASE("non-rectifiable varifolds are rejected") {
    SampleSpec sp;
    sp.kind = SampleKind::plane_disk;
    sp.size = 12.0;
    sp.resolution = 32;
    DiscreteVarifold V = sample_submanifold(sp);
    V.rectifiable = false;
    const ScalarField u = coordinate_field(3, 2);
    CHECK_THROWS_AS((void)audit_parabolic(V, {{u, 1e-2}}, 0.0, -1.0), std::invalid_argument);
  }
}

TEST_CASE("Rigoli-Setti inequality on synthetic mass profiles") {
  SUBCASE("polynomial profiles") {
    for (double k : {2.0, 3.0, 5.0}) {
      const double margin = rigoli_setti_margin(
          [k](double s) { return std::pow(s, k); },
          [k](double s) { return k * std::pow(s, k - 1); }, 1.0, 50.0);
      CHECK(margin >= -1e-8);
    }
  }
  SUBCASE("exponential profile") {
    const double margin = rigoli_setti_margin(
        [](double s) { return std::exp(2.0 * s); },
        [](double s) { return 2.0 * std::exp(2.0 * s); }, 1.0, 30.0);
    CHECK(margin >= -1e-8);
  }
}

TEST_CASE("Barta floor on the sphere cap") {
  const double cap = 1.0;
  const TriMesh mesh = sphere_cap_mesh(cap, 40, 80);
  const int nv = mesh.vertex_count();

  SUBCASE("discrete quotient matches the analytic one for u = 1 - e^{-r}") {
    Vector u(nv);
    for (int i = 0; i < nv; ++i) {
      const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
      u[i] = 1.0 - std::exp(-r);
    }
    const Vector lap = cotan_laplacian(mesh, u);
    const auto bmask = mesh_boundary_vertices(mesh);
    double worst = 0.0;
    for (int i = 0; i < nv; ++i) {
      const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
      if (bmask[i] || r < 0.25) continue;
      const double discrete = lap[i] / (1.0 - u[i]);  // -Lap(u* - u)/(u* - u), u* = 1
      const double exact = 1.0 / std::tan(r) - 1.0;
      worst = std::max(worst, std::abs(discrete - exact) / std::max(1.0, std::abs(exact)));
    }
    CHECK(worst < 0.05);
  }

  SUBCASE("floor inequality at matched delta_bar") {
    // The shipped family u_eps = u* - eps (a + b cos r) has
    // Lap u_eps >= 2 eps b cos(cap) = ell delta_bar / 2 on the cap.
    const int ell = 2;
    const double a = 0.6, b = 0.35;
    for (double eps : {0.1, 0.05, 0.025}) {
      Vector u(nv);
      for (int i = 0; i < nv; ++i) {
        const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
        u[i] = 2.0 - eps * (a + b * std::cos(r));
      }
      const double delta_bar = 4.0 * eps * b * std::cos(cap) / ell;
      const auto rep = barta_bound(mesh, u, 2.0, delta_bar, ell, eps);
      CHECK(rep.discrete_inf >= rep.analytic_floor * 0.95);
    }
  }

  SUBCASE("monotone divergence of the floor at fixed delta_bar") {
    const double delta_bar = 0.02;
    Vector u(nv);
    for (int i = 0; i < nv; ++i) {
      const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
      // scaled to the smallest eps tested so U_eps stays nonempty throughout
      u[i] = 2.0 - 0.025 * (0.6 + 0.35 * std::cos(r));
    }
    double prev = 0.0;
    for (double eps : {0.1, 0.05, 0.025}) {
      const auto rep = barta_bound(mesh, u, 2.0, delta_bar, 2, eps);
      CHECK(rep.analytic_floor == doctest::Approx(2 * delta_bar / (6 * eps)).epsilon(1e-12));
      CHECK(rep.analytic_floor > prev);
      if (prev > 0) CHECK(rep.analytic_floor == doctest::Approx(2 * prev).epsilon(1e-12));
      prev = rep.analytic_floor;
    }
  }

  SUBCASE("halving eps doubles the floor at fixed delta_bar") {
    Vector u(nv);
    for (int i = 0; i < nv; ++i) {
      const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
      u[i] = 2.0 - 0.05 * (0.6 + 0.35 * std::cos(r));
    }
    const auto r1 = barta_bound(mesh, u, 2.0, 0.01, 2, 0.1);
    const auto r2 = barta_bound(mesh, u, 2.0, 0.01, 2, 0.05);
    CHECK(r2.analytic_floor == doctest::Approx(2.0 * r1.analytic_floor).epsilon(1e-12));
  }

  SUBCASE("preconditions") {
    Vector u = Vector::Constant(nv, 3.0);
    CHECK_THROWS_AS((void)barta_bound(mesh, u, 2.0, 0.01, 2, 0.1), std::invalid_argument);
  }
}
