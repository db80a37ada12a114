#include "cmpgeo/barrier.hpp"

#include <cmath>
#include <stdexcept>

namespace cmpgeo {

const char* to_string(BarrierCase c) {
  switch (c) {
    case BarrierCase::A1: return "A1";
    case BarrierCase::A2: return "A2";
    case BarrierCase::B: return "B";
  }
  return "?";
}

double BarrierCertificate::eta(double t) const { return std::exp(-C2 * t); }

BarrierCertificate build_barrier(const BarrierParams& p) {
  if (p.ell < 2) throw std::invalid_argument("build_barrier: ell must be >= 2");
  if (!(p.Lambda_ell >= 0)) throw std::invalid_argument("build_barrier: Lambda_ell must be >= 0");
  if (p.h < 0) throw std::invalid_argument("build_barrier: h must be >= 0");
  if (p.h > p.Lambda_ell) throw std::invalid_argument("build_barrier: h > Lambda_ell");
  if (!(p.R > 0)) throw std::invalid_argument("build_barrier: R must be > 0");

  const double gap = p.Lambda_ell * p.Lambda_ell - p.c;
  BarrierCertificate cert;
  cert.params = p;
  cert.case_tag = gap > 0 ? BarrierCase::A1 : (gap == 0 ? BarrierCase::A2 : BarrierCase::B);

  if (cert.case_tag == BarrierCase::B) {
    if (p.h == p.Lambda_ell)
      throw std::invalid_argument("build_barrier: h = Lambda_ell requires Lambda_ell^2 >= c");
    if (!(p.R < (p.Lambda_ell - p.h) / p.c))
      throw std::invalid_argument("build_barrier: R >= (Lambda_ell - h)/c in case B");
  }

  const double c_plus = std::max(p.c, 0.0);
  cert.C1 = p.ell * p.h +
            (p.ell - 1) * std::max(-p.Lambda_ell_minus_1 + 1.0, std::sqrt(c_plus));

  if (p.h < p.Lambda_ell) {
    cert.delta = cert.case_tag == BarrierCase::B
                     ? p.ell * (p.Lambda_ell - p.h - p.c * p.R) / 2.0
                     : p.ell * (p.Lambda_ell - p.h) / 2.0;
  } else {
    cert.delta = 0.0;
  }
  cert.C2 = cert.C1 + cert.delta;
  cert.delta_bar =
      cert.delta > 0 ? (cert.C2 * std::exp(-cert.C2 * p.R) / p.ell) * cert.delta : 0.0;
  return cert;
}

BarrierValue eval_barrier(const BarrierCertificate& cert, double r) {
  if (r < 0 || r > cert.params.R)
    throw std::domain_error("eval_barrier: r outside [0, R]");
  const double u = cert.eta(r);
  return {u, cert.C2 * u};
}

CertifyReport certify_on_model(const BarrierCertificate& cert, const DomainSpec& domain,
                               int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("certify_on_model: grid too small");
  switch (domain.kind) {
    case DomainSpec::Kind::euclidean_ball:
    case DomainSpec::Kind::space_form_ball:
    case DomainSpec::Kind::cylinder:
    case DomainSpec::Kind::horoball:
    case DomainSpec::Kind::slab:
      break;
    default:
      throw std::invalid_argument("certify_on_model: domain lacks a closed-form distance Hessian");
  }
  const int m = domain.ambient_dim;
  const BarrierParams& p = cert.params;
  if (p.ell > m) throw std::invalid_argument("certify_on_model: ell exceeds ambient dimension");

  const double rmax = std::min(p.R, domain.reach());
  CertifyReport rep;
  rep.grid = grid_n;
  rep.strict = cert.strict();
  rep.threshold = cert.strict() ? cert.delta_bar : 0.0;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const Matrix I = Matrix::Identity(m, m);
  for (int i = 0; i < grid_n; ++i) {
    const double r = rmax * (i + 1) / (grid_n + 1);
    const DistanceJet jet = distance_hessian(domain, domain.point_at_distance(r));
    const double u = cert.eta(r);
    const double etap = -cert.C2 * u, etapp = cert.C2 * cert.C2 * u;
    const Matrix hess_u = etapp * jet.grad * jet.grad.transpose() + etap * jet.hess;
    const double margin = p_minus(hess_u, p.ell) - p.h * cert.C2 * u;
    rep.min_margin = std::min(rep.min_margin, margin);
  }
  return rep;
}

}  // namespace cmpgeo
