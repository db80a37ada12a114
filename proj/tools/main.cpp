// cmpgeo command-line driver: barrier certificates, comparison audits,
// spectral operators, varifold diagnostics and report emission.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cmpgeo/barrier.hpp"
#include "cmpgeo/domains.hpp"
#include "cmpgeo/jacobi.hpp"
#include "cmpgeo/mesh.hpp"
#include "cmpgeo/model_space.hpp"
#include "cmpgeo/ode.hpp"
#include "cmpgeo/principles.hpp"
#include "cmpgeo/random.hpp"
#include "cmpgeo/report.hpp"
#include "cmpgeo/spectral.hpp"
#include "cmpgeo/varifold.hpp"
#include "cmpgeo/varifold_io.hpp"

namespace {

using namespace cmpgeo;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolated = 2;

struct CommonOpts {
  std::string report_path;
  std::string csv_path;
  unsigned seed = 12345;
};

std::string default_report_path(const std::string& command, const std::string& override_path) {
  if (!override_path.empty()) return override_path;
  std::string dir = ".";
  if (const char* env = std::getenv("CMPGEO_REPORT_DIR")) dir = env;
  return dir + "/" + command + "-report.txt";
}

void emit(Report& rep, const std::string& command, const CommonOpts& common,
          std::chrono::steady_clock::time_point started) {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  rep.meta("wall_clock_ms", std::to_string(elapsed.count()));
  rep.write(default_report_path(command, common.report_path));
  if (!common.csv_path.empty()) rep.write_csv(common.csv_path);
  std::cout << rep.to_text();
}

std::vector<double> parse_radii(const std::string& text) {
  // "a:b:n" -> n radii from a to b inclusive
  double a = 0, b = 0;
  int n = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 2 || !(b > a) || !(a > 0))
    throw CLI::ValidationError("radii", "expected start:stop:count with 0 < start < stop");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

SampleSpec auto_sample_spec(const std::string& kind_name, double size, int resolution,
                            double needed_radius) {
  SampleSpec spec;
  spec.kind = parse_sample_kind(kind_name);
  spec.size = size;
  if (resolution > 0) spec.resolution = resolution;
  const double reach = 1.1 * needed_radius;
  switch (spec.kind) {
    case SampleKind::plane_disk:
      spec.size = std::max(size, reach);
      break;
    case SampleKind::catenoid2d:
      spec.extent = std::acosh(std::max(2.0, reach / spec.size));
      break;
    case SampleKind::catenoid3d:
      spec.extent = std::acosh(std::max(2.0, reach / spec.size));
      break;
    case SampleKind::round_sphere:
      break;
  }
  return spec;
}

// Field presets for the audits:
//   slab:<width>         degenerate slab barrier (Lambda = h = 0)
//   ball:<rho>[:<R>]     euclidean-ball barrier with Lambda = 1/rho, h = 0
//   coord:<i>            u(x) = x_i
//   plane-dist:<d>       u(x) = |x_m - d|
ScalarField parse_field_preset(const std::string& text, int m, int ell, std::string& desc) {
  std::istringstream ss(text);
  std::string head;
  std::getline(ss, head, ':');
  if (head == "slab") {
    double width = 0;
    std::istringstream rest(text.substr(5));
    rest >> width;
    if (!(width > 0)) throw CLI::ValidationError("u", "slab:<width> needs width > 0");
    BarrierParams p;
    p.c = 0;
    p.ell = std::max(2, ell);
    p.Lambda_ell_minus_1 = 0;
    p.Lambda_ell = 0;
    p.h = 0;
    p.R = width / 2;
    const BarrierCertificate cert = build_barrier(p);
    desc = "slab barrier width " + std::to_string(width);
    return barrier_field(cert, DomainSpec::slab(m, width));
  }
  if (head == "ball") {
    double rho = 0, R = 0;
    char sep = 0;
    std::istringstream rest(text.substr(5));
    rest >> rho;
    if (rest >> sep >> R) {
    } else {
      R = rho / 2;
    }
    if (!(rho > 0) || !(R > 0)) throw CLI::ValidationError("u", "ball:<rho>[:<R>] needs rho > 0");
    BarrierParams p;
    p.c = 0;
    p.ell = std::max(2, ell);
    p.Lambda_ell_minus_1 = 1.0 / rho;
    p.Lambda_ell = 1.0 / rho;
    p.h = 0;
    p.R = R;
    const BarrierCertificate cert = build_barrier(p);
    desc = "euclidean ball barrier rho " + std::to_string(rho);
    return barrier_field(cert, DomainSpec::euclidean_ball(m, rho));
  }
  if (head == "coord") {
    int i = -1;
    std::istringstream rest(text.substr(6));
    rest >> i;
    desc = "coordinate x_" + std::to_string(i);
    return coordinate_field(m, i);
  }
  if (head == "plane-dist") {
    double d = 0;
    std::istringstream rest(text.substr(11));
    rest >> d;
    desc = "distance to the plane {x_m = " + std::to_string(d) + "}";
    ScalarField f;
    f.value = [d, m](const Vector& x) { return std::abs(x[m - 1] - d); };
    f.grad = [d, m](const Vector& x) {
      Vector g = Vector::Zero(m);
      g[m - 1] = x[m - 1] >= d ? 1.0 : -1.0;
      return g;
    };
    f.hess = [m](const Vector&) { return Matrix(Matrix::Zero(m, m)); };
    return f;
  }
  throw CLI::ValidationError("u", "unknown field preset: " + text);
}

std::vector<TestField> random_smooth_fields(const DiscreteVarifold& V, int count,
                                            std::mt19937_64& rng) {
  const int m = V.ambient_dim();
  const double rad = V.bounding_radius();
  std::vector<TestField> fields;
  for (int f = 0; f < count; ++f) {
    const Vector a = random_gaussian_matrix(rng, m, 1);
    const Matrix B = random_gaussian_matrix(rng, m, m);
    TestField tf;
    tf.center = Vector::Zero(m);
    tf.support_radius = 2.0 * rad;
    tf.Z = [a, B, rad, m](const Vector& x) {
      const double cut = radial_cutoff(x.norm(), 2.0 * rad, 0.6);
      return Vector(cut * (a + B * x));
    };
    // normalize to sup |Z| ~ 1 over the cloud
    double sup = 0;
    for (int i = 0; i < V.size(); ++i) sup = std::max(sup, tf.Z(V.points.col(i)).norm());
    if (sup > 0) {
      auto base = tf.Z;
      tf.Z = [base, sup](const Vector& x) { return Vector(base(x) / sup); };
    }
    fields.push_back(tf);
  }
  return fields;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmpgeo: comparison-geometry barriers, varifold audits and growth diagnostics"};
  app.require_subcommand(1);
  // '--h' is a documented option name, so help lives on '--help' only
  app.set_help_flag("--help", "print help");
  CommonOpts common;
  app.add_option("--report", common.report_path, "report file path (default $CMPGEO_REPORT_DIR)");
  app.add_option("--csv", common.csv_path, "also write series as CSV");
  app.add_option("--seed", common.seed, "random seed for stochastic commands");

  // --- barrier ---------------------------------------------------------
  auto* cmd_barrier = app.add_subcommand("barrier", "build a barrier certificate");
  cmd_barrier->set_help_flag("--help", "print help");
  cmd_barrier->fallthrough();
  struct {
    double c = 0;
    int ell = 2;
    double lam1 = 0, lam2 = 0, h = 0, R = 1;
    std::string certify;
    double rho = 2.0;
    int dim = 3, grid = 200;
  } ob;
  cmd_barrier->add_option("--c", ob.c, "curvature bound parameter")->required();
  cmd_barrier->add_option("--ell", ob.ell, "dimension ell >= 2")->required();
  cmd_barrier->add_option("--lam1", ob.lam1, "Lambda_(ell-1)")->required();
  cmd_barrier->add_option("--lam2", ob.lam2, "Lambda_ell")->required();
  cmd_barrier->add_option("--h", ob.h, "mean curvature budget")->required();
  cmd_barrier->add_option("--R", ob.R, "collar radius")->required();
  cmd_barrier->add_option("--certify", ob.certify, "model domain: ball | horoball | slab | cylinder");
  cmd_barrier->add_option("--rho", ob.rho, "model domain radius / width");
  cmd_barrier->add_option("--dim", ob.dim, "ambient dimension for --certify");
  cmd_barrier->add_option("--grid", ob.grid, "certification grid size");

  // --- riccati ---------------------------------------------------------
  auto* cmd_riccati = app.add_subcommand("riccati", "scalar Riccati comparison solution");
  cmd_riccati->set_help_flag("--help", "print help");
  cmd_riccati->fallthrough();
  struct {
    double tau0 = -1, c = 0, t_max = 1;
    int samples = 101;
  } orc;
  cmd_riccati->add_option("--tau0", orc.tau0, "initial slope")->required();
  cmd_riccati->add_option("--c", orc.c, "curvature parameter")->required();
  cmd_riccati->add_option("--t-max", orc.t_max, "horizon")->required();
  cmd_riccati->add_option("--samples", orc.samples, "sample count");

  // --- pminus ----------------------------------------------------------
  auto* cmd_pminus = app.add_subcommand("pminus", "average of the ell smallest eigenvalues");
  cmd_pminus->set_help_flag("--help", "print help");
  cmd_pminus->fallthrough();
  struct {
    int ell = 1;
    std::string diag, file;
  } op;
  cmd_pminus->add_option("--ell", op.ell, "ell")->required();
  cmd_pminus->add_option("--diag", op.diag, "comma-separated diagonal entries");
  cmd_pminus->add_option("--file", op.file, "whitespace matrix file (n^2 floats)");

  // --- enclosure -------------------------------------------------------
  auto* cmd_enc = app.add_subcommand("enclosure", "distance bound of the barrier principle");
  cmd_enc->set_help_flag("--help", "print help");
  cmd_enc->fallthrough();
  struct {
    double lam = 0, H = 0, c = 0, dist = 0;
    bool no_boundary = false;
  } oe;
  cmd_enc->add_option("--lam", oe.lam, "Lambda_ell")->required();
  cmd_enc->add_option("--H", oe.H, "sup-norm of the mean curvature")->required();
  cmd_enc->add_option("--c", oe.c, "curvature bound")->required();
  cmd_enc->add_option("--dist-boundary", oe.dist, "dist(spt ||dSigma||, dOmega)");
  cmd_enc->add_flag("--no-boundary", oe.no_boundary, "Sigma has no boundary");

  // --- varifold-check --------------------------------------------------
  auto* cmd_vc = app.add_subcommand("varifold-check", "mean-curvature bound test");
  cmd_vc->set_help_flag("--help", "print help");
  cmd_vc->fallthrough();
  struct {
    std::string input, sample;
    double size = 1.0;
    int resolution = 0;
    double h = 0;
    int fields = 20;
    double tol_rel = 0.01;
    bool adversarial = false;
  } ovc;
  cmd_vc->add_option("--input", ovc.input, "varifold file");
  cmd_vc->add_option("--sample", ovc.sample, "built-in sample kind");
  cmd_vc->add_option("--size", ovc.size, "sample size parameter");
  cmd_vc->add_option("--resolution", ovc.resolution, "sample resolution");
  cmd_vc->add_option("--h", ovc.h, "mean curvature bound to test")->required();
  cmd_vc->add_option("--fields", ovc.fields, "number of random test fields");
  cmd_vc->add_option("--tol-rel", ovc.tol_rel, "tolerance as a fraction of ell * mass");
  cmd_vc->add_flag("--adversarial", ovc.adversarial,
                   "add the inward radial field (aligned with the sphere's H)");

  // --- growth ----------------------------------------------------------
  auto* cmd_growth = app.add_subcommand("growth", "mass growth and parabolicity diagnostics");
  cmd_growth->set_help_flag("--help", "print help");
  cmd_growth->fallthrough();
  struct {
    std::string input, sample = "catenoid2d", radii = "10:100:10";
    double size = 1.0, sigma = 0, alpha = 0;
    int resolution = 0;
  } og;
  cmd_growth->add_option("--input", og.input, "varifold file");
  cmd_growth->add_option("--sample", og.sample, "built-in sample kind");
  cmd_growth->add_option("--size", og.size, "sample size parameter");
  cmd_growth->add_option("--resolution", og.resolution, "sample resolution");
  cmd_growth->add_option("--radii", og.radii, "start:stop:count");
  cmd_growth->add_option("--sigma", og.sigma, "growth exponent sigma");
  cmd_growth->add_option("--alpha", og.alpha, "weight exponent alpha");

  // --- maxprin ---------------------------------------------------------
  auto* cmd_mp = app.add_subcommand("maxprin", "maximum-principle audit");
  cmd_mp->set_help_flag("--help", "print help");
  cmd_mp->fallthrough();
  struct {
    std::string input, sample, u;
    double size = 1.0;
    int resolution = 0;
    double h = 0, sigma = 0, alpha = 0, d0 = 0, gamma = 0, tol = 1e-9;
    bool boundaryless = false;
  } omp;
  cmd_mp->add_option("--input", omp.input, "varifold file");
  cmd_mp->add_option("--sample", omp.sample, "built-in sample kind");
  cmd_mp->add_option("--size", omp.size, "sample size parameter");
  cmd_mp->add_option("--resolution", omp.resolution, "sample resolution");
  cmd_mp->add_option("--u", omp.u, "field preset (slab:<w> | ball:<rho>[:R] | coord:<i>)")
      ->required();
  cmd_mp->add_option("--h", omp.h, "mean curvature bound");
  cmd_mp->add_option("--sigma", omp.sigma, "growth exponent sigma");
  cmd_mp->add_option("--alpha", omp.alpha, "weight exponent alpha");
  cmd_mp->add_option("--d0", omp.d0, "growth constant d0");
  cmd_mp->add_option("--gamma", omp.gamma, "level gamma")->required();
  cmd_mp->add_option("--tol", omp.tol, "verdict tolerance");
  cmd_mp->add_flag("--boundaryless", omp.boundaryless,
                   "clear boundary flags (truncated sample of a complete submanifold)");

  // --- parabolic -------------------------------------------------------
  auto* cmd_para = app.add_subcommand("parabolic", "parabolicity (Ahlfors) audit");
  cmd_para->set_help_flag("--help", "print help");
  cmd_para->fallthrough();
  struct {
    std::string input, sample, u;
    double size = 1.0;
    int resolution = 0;
    double h = 0, gamma = 0;
    std::vector<double> eps{1e-2, 1e-3};
    bool boundaryless = false;
  } opa;
  cmd_para->add_option("--input", opa.input, "varifold file");
  cmd_para->add_option("--sample", opa.sample, "built-in sample kind");
  cmd_para->add_option("--size", opa.size, "sample size parameter");
  cmd_para->add_option("--resolution", opa.resolution, "sample resolution");
  cmd_para->add_option("--u", opa.u, "field preset")->required();
  cmd_para->add_option("--h", opa.h, "mean curvature bound");
  cmd_para->add_option("--gamma", opa.gamma, "level gamma")->required();
  cmd_para->add_option("--eps", opa.eps, "epsilon sequence");
  cmd_para->add_flag("--boundaryless", opa.boundaryless, "clear boundary flags");
  std::string para_radii;
  cmd_para->add_option("--radii", para_radii, "growth radii start:stop:count (default derived)");

  // --- spectrum --------------------------------------------------------
  auto* cmd_spec = app.add_subcommand("spectrum", "Barta floor on the sphere-cap example");
  cmd_spec->set_help_flag("--help", "print help");
  cmd_spec->fallthrough();
  struct {
    double eps = 0.1, cap = 1.0, ustar = 2.0, acoef = 0.6, bcoef = 0.35;
    int rings = 40, sectors = 80;
  } os;
  cmd_spec->add_option("--eps", os.eps, "barrier approximation epsilon");
  cmd_spec->add_option("--cap", os.cap, "cap polar angle (radians)");
  cmd_spec->add_option("--rings", os.rings, "mesh rings");
  cmd_spec->add_option("--sectors", os.sectors, "mesh sectors");
  cmd_spec->add_option("--ustar", os.ustar, "supremum constant u*");
  cmd_spec->add_option("--a", os.acoef, "field coefficient a (u = u* - eps(a + b cos r))");
  cmd_spec->add_option("--b", os.bcoef, "field coefficient b");

  // --- sample ----------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "sample a test submanifold to a varifold file");
  cmd_sample->set_help_flag("--help", "print help");
  cmd_sample->fallthrough();
  struct {
    std::string kind = "sphere", out;
    double size = 1.0, extent = 5.5;
    int resolution = 0;
  } osm;
  cmd_sample->add_option("--kind", osm.kind, "plane | sphere | catenoid2d | catenoid3d");
  cmd_sample->add_option("--out", osm.out, "output varifold file")->required();
  cmd_sample->add_option("--size", osm.size, "radius / neck parameter");
  cmd_sample->add_option("--extent", osm.extent, "profile parameter range");
  cmd_sample->add_option("--resolution", osm.resolution, "resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // contract: 0 for --help/--version, 1 for any input error
    return code == 0 ? kExitOk : kExitInput;
  }
  const auto started = std::chrono::steady_clock::now();

  try {
    if (*cmd_barrier) {
      Report rep("barrier");
      BarrierParams p{ob.c, ob.ell, ob.lam1, ob.lam2, ob.h, ob.R};
      const BarrierCertificate cert = build_barrier(p);
      rep.set("c", p.c);
      rep.set("ell", p.ell);
      rep.set("lambda_ell_minus_1", p.Lambda_ell_minus_1);
      rep.set("lambda_ell", p.Lambda_ell);
      rep.set("h", p.h);
      rep.set("R", p.R);
      rep.set("case", to_string(cert.case_tag));
      rep.set("C1", cert.C1);
      rep.set("delta", cert.delta);
      rep.set("C2", cert.C2);
      rep.set("delta_bar", cert.delta_bar);
      rep.set("strict", cert.strict());
      std::string verdict = "consistent";
      if (!ob.certify.empty()) {
        DomainSpec dom = DomainSpec::euclidean_ball(ob.dim, ob.rho);
        if (ob.certify == "ball")
          dom = DomainSpec::euclidean_ball(ob.dim, ob.rho);
        else if (ob.certify == "horoball")
          dom = DomainSpec::horoball(ob.dim);
        else if (ob.certify == "slab")
          dom = DomainSpec::slab(ob.dim, ob.rho);
        else if (ob.certify == "cylinder")
          dom = DomainSpec::cylinder(ob.dim, 1, ob.rho, 0.0);
        else
          throw CLI::ValidationError("certify", "unknown model domain " + ob.certify);
        const CertifyReport cr = certify_on_model(cert, dom, ob.grid);
        rep.set("certify_domain", ob.certify);
        rep.set("certify_min_margin", cr.min_margin);
        rep.set("certify_threshold", cr.threshold);
        rep.set("certify_strict", cr.strict);
        if (!cr.strict) rep.set("certify_note", "no strict certificate (delta_bar = 0)");
        if (!cr.pass(1e-8)) verdict = "violated";
      }
      rep.verdict(verdict);
      emit(rep, "barrier", common, started);
      return rep.verdict() == "violated" ? kExitViolated : kExitOk;
    }

    if (*cmd_riccati) {
      Report rep("riccati");
      const RiccatiState state = make_riccati_state(orc.tau0, orc.c, orc.t_max);
      rep.set("tau0", orc.tau0);
      rep.set("c", orc.c);
      rep.set("domain_end", state.domain_end);
      const double t_hi = std::min(orc.t_max, 0.98 * state.domain_end);
      std::vector<double> ts, fs;
      for (int i = 0; i < orc.samples; ++i) {
        const double t = t_hi * i / (orc.samples - 1);
        ts.push_back(t);
        fs.push_back(riccati_closed_form(orc.tau0, orc.c, t));
      }
      // cross-check against direct ODE integration of theta' = c - theta^2
      OdeRhs rhs = [&](double, const Vector& y, Vector& dy) {
        dy[0] = orc.c - y[0] * y[0];
      };
      OdeOptions oopt;
      oopt.rel_tol = 1e-10;
      oopt.abs_tol = 1e-12;
      double max_dev = 0;
      Vector y0(1);
      y0[0] = orc.tau0;
      size_t idx = 0;
      ode_integrate_sampled(rhs, 0.0, y0, ts, oopt, [&](double, const Vector& y) {
        max_dev = std::max(max_dev, std::abs(y[0] - fs[idx]));
        ++idx;
      });
      rep.series("theta", ts, fs);
      rep.set("ode_max_deviation", max_dev);
      rep.verdict(max_dev < 1e-6 ? "consistent" : "violated");
      emit(rep, "riccati", common, started);
      return rep.verdict() == "violated" ? kExitViolated : kExitOk;
    }

    if (*cmd_pminus) {
      Report rep("pminus");
      Matrix A;
      if (!op.diag.empty()) {
        std::vector<double> d;
        std::stringstream ss(op.diag);
        std::string tok;
        while (std::getline(ss, tok, ',')) d.push_back(std::stod(tok));
        A = Matrix::Zero(d.size(), d.size());
        for (size_t i = 0; i < d.size(); ++i) A(i, i) = d[i];
      } else if (!op.file.empty()) {
        std::ifstream is(op.file);
        if (!is) throw std::runtime_error("cannot open " + op.file);
        std::vector<double> vals;
        double v;
        while (is >> v) vals.push_back(v);
        const int n = static_cast<int>(std::lround(std::sqrt(double(vals.size()))));
        if (n * n != static_cast<int>(vals.size()))
          throw std::runtime_error("matrix file must hold n^2 floats");
        A.resize(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) A(i, j) = vals[i * n + j];
      } else {
        throw CLI::ValidationError("pminus", "need --diag or --file");
      }
      rep.set("dim", static_cast<int>(A.rows()));
      rep.set("ell", op.ell);
      rep.set("p_minus", p_minus(A, op.ell));
      rep.set("min_trace_subspace", min_trace_subspace(A, op.ell));
      rep.verdict("consistent");
      emit(rep, "pminus", common, started);
      return kExitOk;
    }

    if (*cmd_enc) {
      Report rep("enclosure");
      const double dist = oe.no_boundary ? std::numeric_limits<double>::infinity() : oe.dist;
      const EnclosureBound b = enclosure_bounds(oe.lam, oe.H, oe.c, dist);
      rep.set("lambda_ell", oe.lam);
      rep.set("H_norm", oe.H);
      rep.set("c", oe.c);
      rep.set("case", std::string(1, b.case_tag));
      rep.set("bound", b.bound);
      rep.set("nonexistence", b.nonexistence);
      rep.verdict("consistent");
      emit(rep, "enclosure", common, started);
      return kExitOk;
    }

    if (*cmd_vc) {
      Report rep("varifold-check");
      DiscreteVarifold V;
      if (!ovc.input.empty()) {
        V = read_varifold_file(ovc.input);
      } else if (!ovc.sample.empty()) {
        SampleSpec spec;
        spec.kind = parse_sample_kind(ovc.sample);
        spec.size = ovc.size;
        if (ovc.resolution > 0) spec.resolution = ovc.resolution;
        V = sample_submanifold(spec);
      } else {
        throw CLI::ValidationError("varifold-check", "need --input or --sample");
      }
      std::mt19937_64 rng(common.seed);
      auto fields = random_smooth_fields(V, ovc.fields, rng);
      if (ovc.adversarial) {
        const double rad = V.bounding_radius();
        TestField adv;
        adv.center = Vector::Zero(V.ambient_dim());
        adv.support_radius = 2.0 * rad;
        adv.Z = [rad](const Vector& x) {
          return Vector(-x * radial_cutoff(x.norm(), 2.0 * rad, 0.6));
        };
        double sup = 0;
        for (int i = 0; i < V.size(); ++i) sup = std::max(sup, adv.Z(V.points.col(i)).norm());
        if (sup > 0) {
          auto base = adv.Z;
          adv.Z = [base, sup](const Vector& x) { return Vector(base(x) / sup); };
        }
        fields.push_back(adv);
      }
      const CurvatureBoundReport cr = check_mean_curvature_bound(V, ovc.h, fields);
      rep.set("input", !ovc.input.empty() ? "file:" + ovc.input : "sample:" + ovc.sample);
      rep.set("n", V.size());
      rep.set("ell", V.ell);
      rep.set("mass", cr.mass);
      rep.set("h", ovc.h);
      rep.set("fields", static_cast<int>(fields.size()));
      rep.set("min_value", cr.min_value);
      rep.set("argmin_field", cr.argmin_field);
      const double tol = ovc.tol_rel * V.ell * cr.mass;
      rep.set("tolerance", tol);
      rep.verdict(cr.min_value >= -tol ? "consistent" : "violated");
      emit(rep, "varifold-check", common, started);
      return rep.verdict() == "violated" ? kExitViolated : kExitOk;
    }

    if (*cmd_growth) {
      Report rep("growth");
      const auto radii = parse_radii(og.radii);
      DiscreteVarifold V;
      if (!og.input.empty()) {
        V = read_varifold_file(og.input);
      } else {
        V = sample_submanifold(auto_sample_spec(og.sample, og.size, og.resolution, radii.back()));
      }
      const GrowthDiagnostics g = growth_diagnostics(V, og.sigma, og.alpha, radii);
      rep.set("input", !og.input.empty() ? "file:" + og.input : "sample:" + og.sample);
      rep.set("n", V.size());
      rep.set("sigma", og.sigma);
      rep.set("alpha", og.alpha);
      rep.set("d0_estimate", g.d0_estimate);
      rep.set("fitted_exponent", g.fitted_exponent);
      rep.set("parabolic", g.parabolic.value);
      rep.set("parabolic_confidence", g.parabolic.confidence);
      rep.set("parabolic_note", g.parabolic.note);
      rep.set("stochastically_complete", g.stochastically_complete.value);
      rep.set("stochastically_complete_note", g.stochastically_complete.note);
      rep.series("mass", g.radii, g.masses);
      rep.verdict("consistent");
      emit(rep, "growth", common, started);
      return kExitOk;
    }

    if (*cmd_mp) {
      Report rep("maxprin");
      DiscreteVarifold V;
      if (!omp.input.empty()) {
        V = read_varifold_file(omp.input);
      } else if (!omp.sample.empty()) {
        SampleSpec spec;
        spec.kind = parse_sample_kind(omp.sample);
        spec.size = omp.size;
        if (omp.resolution > 0) spec.resolution = omp.resolution;
        V = sample_submanifold(spec);
      } else {
        throw CLI::ValidationError("maxprin", "need --input or --sample");
      }
      if (omp.boundaryless) std::fill(V.boundary.begin(), V.boundary.end(), 0);
      std::string desc;
      const ScalarField u = parse_field_preset(omp.u, V.ambient_dim(), V.ell, desc);
      GrowthParams gp{omp.sigma, omp.alpha, omp.d0};
      MaxPrincipleOptions mo;
      mo.tolerance = omp.tol;
      const PrincipleReport pr = audit_max_principle(V, u, omp.h, gp, omp.gamma, mo);
      rep.set("input", !omp.input.empty() ? "file:" + omp.input : "sample:" + omp.sample);
      rep.set("n", V.size());
      rep.set("field", desc);
      rep.set("h", omp.h);
      rep.set("sigma", gp.sigma);
      rep.set("alpha", gp.alpha);
      rep.set("d0", gp.d0);
      rep.set("gamma", omp.gamma);
      rep.set("points_in_level_set", pr.points_in_level_set);
      rep.set("K_estimate", pr.K_estimate);
      rep.set("u_hat", pr.u_hat);
      rep.set("I_value", pr.I_value);
      rep.set("I_positive", pr.I_positive);
      rep.set("I_borderline", pr.I_borderline);
      rep.set("C_value", pr.C_value);
      rep.set("bound_rhs", pr.bound_rhs);
      rep.verdict(pr.consistent ? "consistent" : "violated");
      emit(rep, "maxprin", common, started);
      return rep.verdict() == "violated" ? kExitViolated : kExitOk;
    }

    if (*cmd_para) {
      Report rep("parabolic");
      DiscreteVarifold V;
      if (!opa.input.empty()) {
        V = read_varifold_file(opa.input);
      } else if (!opa.sample.empty()) {
        SampleSpec spec;
        spec.kind = parse_sample_kind(opa.sample);
        spec.size = opa.size;
        if (opa.resolution > 0) spec.resolution = opa.resolution;
        V = sample_submanifold(spec);
      } else {
        throw CLI::ValidationError("parabolic", "need --input or --sample");
      }
      if (opa.boundaryless) std::fill(V.boundary.begin(), V.boundary.end(), 0);
      std::string desc;
      const ScalarField u = parse_field_preset(opa.u, V.ambient_dim(), V.ell, desc);
      std::vector<std::pair<ScalarField, double>> seq;
      for (double e : opa.eps) seq.emplace_back(u, e);
      ParabolicOptions popt;
      if (!para_radii.empty()) popt.radii = parse_radii(para_radii);
      const ParabolicAudit audit = audit_parabolic(V, seq, opa.h, opa.gamma, popt);
      rep.set("input", !opa.input.empty() ? "file:" + opa.input : "sample:" + opa.sample);
      rep.set("n", V.size());
      rep.set("field", desc);
      rep.set("h", opa.h);
      rep.set("gamma", opa.gamma);
      rep.set("fitted_exponent", audit.fitted_exponent);
      const char* status = audit.status == ParabolicAudit::Status::pass ? "pass"
                           : audit.status == ParabolicAudit::Status::hypothesis_failed
                               ? "hypothesis_failed"
                               : "precondition_failed";
      rep.set("status", status);
      rep.set("reason", audit.reason.empty() ? "-" : audit.reason);
      rep.set("component_count", audit.component_count);
      rep.set("failure_points", static_cast<int>(audit.failure_points.size()));
      if (!audit.failure_points.empty()) {
        std::string head;
        for (size_t i = 0; i < audit.failure_points.size() && i < 8; ++i)
          head += (i ? "," : "") + std::to_string(audit.failure_points[i]);
        rep.set("failure_head", head);
      }
      rep.verdict(audit.status == ParabolicAudit::Status::pass ? "consistent" : "violated");
      emit(rep, "parabolic", common, started);
      return rep.verdict() == "violated" ? kExitViolated : kExitOk;
    }

    if (*cmd_spec) {
      Report rep("spectrum");
      const TriMesh mesh = sphere_cap_mesh(os.cap, os.rings, os.sectors);
      const int nv = mesh.vertex_count();
      // shipped exterior-region field u_eps = u* - eps (a + b cos r)
      Vector u(nv);
      for (int i = 0; i < nv; ++i) {
        const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
        u[i] = os.ustar - os.eps * (os.acoef + os.bcoef * std::cos(r));
      }
      const int ell = 2;
      const double delta_bar = 4.0 * os.eps * os.bcoef * std::cos(os.cap) / ell;
      const BartaReport br = barta_bound(mesh, u, os.ustar, delta_bar, ell, os.eps);
      rep.set("cap", os.cap);
      rep.set("eps", os.eps);
      rep.set("delta_bar", delta_bar);
      rep.set("vertices", nv);
      rep.set("quotient_vertices", br.quotient_vertices);
      rep.set("discrete_inf", br.discrete_inf);
      rep.set("analytic_floor", br.analytic_floor);

      // cross-check: radial u = 1 - e^{-r} has quotient cot(r) - 1
      Vector u2(nv), q_exact(nv);
      for (int i = 0; i < nv; ++i) {
        const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
        u2[i] = 1.0 - std::exp(-r);
        q_exact[i] = 1.0 / std::tan(std::max(r, 1e-9)) - 1.0;
      }
      const Vector lap2 = cotan_laplacian(mesh, u2);
      const auto bmask = mesh_boundary_vertices(mesh);
      double worst_rel = 0;
      for (int i = 0; i < nv; ++i) {
        const double r = std::acos(std::clamp(mesh.vertices(2, i), -1.0, 1.0));
        if (bmask[i] || r < 0.25 * os.cap) continue;
        const double qd = lap2[i] / (1.0 - u2[i]);
        worst_rel = std::max(worst_rel, std::abs(qd - q_exact[i]) /
                                            std::max(1.0, std::abs(q_exact[i])));
      }
      rep.set("radial_quotient_max_rel_err", worst_rel);
      const bool ok = br.discrete_inf >= br.analytic_floor - 0.05 * std::abs(br.analytic_floor);
      rep.verdict(ok ? "consistent" : "violated");
      emit(rep, "spectrum", common, started);
      return rep.verdict() == "violated" ? kExitViolated : kExitOk;
    }

    if (*cmd_sample) {
      Report rep("sample");
      SampleSpec spec;
      spec.kind = parse_sample_kind(osm.kind);
      spec.size = osm.size;
      spec.extent = osm.extent;
      if (osm.resolution > 0) spec.resolution = osm.resolution;
      const DiscreteVarifold V = sample_submanifold(spec);
      write_varifold_file(osm.out, V);
      rep.set("kind", osm.kind);
      rep.set("n", V.size());
      rep.set("ell", V.ell);
      rep.set("ambient_dim", V.ambient_dim());
      rep.set("mass", V.mass());
      rep.set("out", osm.out);
      rep.verdict("consistent");
      emit(rep, "sample", common, started);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
