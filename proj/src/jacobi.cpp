#include "cmpgeo/jacobi.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cmpgeo/model_space.hpp"
#include "cmpgeo/ode.hpp"
#include "cmpgeo/random.hpp"

namespace cmpgeo {

namespace {

Eigen::Map<const Matrix> as_matrix(const Vector& y, int n, int block) {
  return Eigen::Map<const Matrix>(y.data() + block * n * n, n, n);
}

std::vector<double> uniform_grid(double T, int samples) {
  if (samples < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
  std::vector<double> ts(samples);
  for (int i = 0; i < samples; ++i) ts[i] = T * static_cast<double>(i) / (samples - 1);
  return ts;
}

void check_profile(const CurvatureProfile& profile, double T) {
  if (profile.dim < 1) throw std::invalid_argument("CurvatureProfile: dim must be >= 1");
  if (!profile.R_of_t) throw std::invalid_argument("CurvatureProfile: missing R_of_t");
  if (T > profile.horizon + 1e-12)
    throw std::invalid_argument("integration horizon exceeds profile horizon");
}

}  // namespace

CurvatureProfile CurvatureProfile::constant(int dim, const Matrix& R, double horizon) {
  if (R.rows() != dim || R.cols() != dim)
    throw std::invalid_argument("CurvatureProfile::constant: dimension mismatch");
  const Matrix Rs = symmetrize(R);
  return {dim, [Rs](double) { return Rs; }, horizon};
}

CurvatureProfile CurvatureProfile::space_form(int dim, double c, double horizon) {
  return constant(dim, (-c * Matrix::Identity(dim, dim)).eval(), horizon);
}

RiccatiTrajectory integrate_riccati(const CurvatureProfile& profile, const Matrix& B0, double T,
                                    double tol, int samples) {
  check_profile(profile, T);
  const int n = profile.dim;
  if (B0.rows() != n || B0.cols() != n)
    throw std::invalid_argument("integrate_riccati: B0 dimension mismatch");
  if (!(tol > 0)) throw std::invalid_argument("integrate_riccati: tol must be > 0");

  const double blow_threshold = 1.0 / tol;

  OdeRhs rhs = [&profile, n](double t, const Vector& y, Vector& dy) {
    Eigen::Map<const Matrix> B(y.data(), n, n);
    Eigen::Map<Matrix> dB(dy.data(), n, n);
    dB = -(B * B) - profile.R_of_t(t);
  };

  OdeOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol * 1e-2;
  opt.project = [n](Vector& y) {
    Eigen::Map<Matrix> B(y.data(), n, n);
    B = 0.5 * (B + B.transpose()).eval();
  };
  opt.watch = [n, blow_threshold](double, const Vector& y) {
    Eigen::Map<const Matrix> B(y.data(), n, n);
    return sym_spectral_norm(B) <= blow_threshold;
  };

  Vector y0(n * n);
  Eigen::Map<Matrix>(y0.data(), n, n) = symmetrize(B0);

  RiccatiTrajectory traj;
  const auto grid = uniform_grid(T, samples);
  const OdeResult res = ode_integrate_sampled(
      rhs, 0.0, std::move(y0), grid, opt, [&](double t, const Vector& y) {
        traj.times.push_back(t);
        traj.B_of_t.emplace_back(as_matrix(y, n, 0));
      });
  if (res.status == OdeStatus::halted || res.status == OdeStatus::step_underflow) {
    traj.blowup_time = res.t;
  } else if (res.status == OdeStatus::max_steps) {
    throw std::runtime_error("integrate_riccati: integrator exceeded max steps");
  }
  return traj;
}

JacobiTrajectory integrate_jacobi(const CurvatureProfile& profile, const Matrix& Jprime0, double T,
                                  double tol, int samples, double det_tol) {
  check_profile(profile, T);
  const int n = profile.dim;
  if (Jprime0.rows() != n || Jprime0.cols() != n)
    throw std::invalid_argument("integrate_jacobi: Jprime0 dimension mismatch");
  if (!(tol > 0)) throw std::invalid_argument("integrate_jacobi: tol must be > 0");

  // State layout: [J | J'] flattened column-major.
  OdeRhs rhs = [&profile, n](double t, const Vector& y, Vector& dy) {
    Eigen::Map<const Matrix> J(y.data(), n, n);
    Eigen::Map<const Matrix> Jp(y.data() + n * n, n, n);
    Eigen::Map<Matrix> dJ(dy.data(), n, n);
    Eigen::Map<Matrix> dJp(dy.data() + n * n, n, n);
    dJ = Jp;
    dJp = -(profile.R_of_t(t) * J);
  };

  OdeOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol * 1e-2;

  Vector y0(2 * n * n);
  Eigen::Map<Matrix>(y0.data(), n, n) = Matrix::Identity(n, n);
  Eigen::Map<Matrix>(y0.data() + n * n, n, n) = Jprime0;

  JacobiTrajectory traj;
  const auto grid = uniform_grid(T, samples);
  const OdeResult res = ode_integrate_sampled(
      rhs, 0.0, y0, grid, opt, [&](double t, const Vector& y) {
        traj.times.push_back(t);
        traj.J_of_t.emplace_back(as_matrix(y, n, 0));
        traj.Jprime_of_t.emplace_back(as_matrix(y, n, 1));
      });
  if (res.status == OdeStatus::max_steps || res.status == OdeStatus::step_underflow)
    throw std::runtime_error("integrate_jacobi: integrator failure");

  // Focal detection.  A sign change of det J is bisected directly (no
  // tolerance-induced offset, covers odd-multiplicity kernels); when the
  // determinant only touches zero (even multiplicity) near-zero local dips
  // are refined by golden-section and accepted if the minimum drops below
  // det_tol.
  std::vector<double> dets(traj.times.size());
  for (size_t i = 0; i < traj.times.size(); ++i) dets[i] = traj.J_of_t[i].determinant();

  auto state_at = [&](size_t i) {
    Vector y(2 * n * n);
    Eigen::Map<Matrix>(y.data(), n, n) = traj.J_of_t[i];
    Eigen::Map<Matrix>(y.data() + n * n, n, n) = traj.Jprime_of_t[i];
    return y;
  };
  // bisect the predicate det > cutoff on [times[i-1], hi0]
  auto bisect_crossing = [&](size_t left, double hi0, double cutoff) {
    double lo = traj.times[left], hi = hi0;
    Vector ylo = state_at(left);
    while (hi - lo > 1e-8) {
      const double mid = 0.5 * (lo + hi);
      const OdeResult sub = ode_integrate(rhs, lo, ylo, mid, opt);
      if (as_matrix(sub.y, n, 0).determinant() > cutoff) {
        lo = mid;
        ylo = sub.y;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  size_t neg_idx = 0, tol_idx = 0;
  for (size_t i = 1; i < dets.size(); ++i) {
    if (neg_idx == 0 && dets[i] < 0.0 && dets[i - 1] > 0.0) neg_idx = i;
    if (tol_idx == 0 && dets[i] <= det_tol && dets[i - 1] > det_tol) tol_idx = i;
    if (neg_idx) break;
  }

  if (neg_idx) {
    traj.first_focal = bisect_crossing(neg_idx - 1, traj.times[neg_idx], 0.0);
  } else if (tol_idx) {
    traj.first_focal = bisect_crossing(tol_idx - 1, traj.times[tol_idx], det_tol);
  } else {
    const double dip_trigger = 1e-2 * std::max(1.0, dets[0]);
    for (size_t m = 1; m + 1 < dets.size(); ++m) {
      if (!(dets[m] <= dets[m - 1] && dets[m] <= dets[m + 1])) continue;
      if (dets[m] > dip_trigger) continue;
      auto det_at = [&](double t) {
        const OdeResult sub = ode_integrate(rhs, traj.times[m - 1], state_at(m - 1), t, opt);
        return as_matrix(sub.y, n, 0).determinant();
      };
      double a = traj.times[m - 1], b = traj.times[m + 1];
      for (int it = 0; it < 120 && b - a > 1e-9; ++it) {
        const double x1 = a + 0.382 * (b - a), x2 = a + 0.618 * (b - a);
        if (det_at(x1) < det_at(x2))
          b = x2;
        else
          a = x1;
      }
      const double tmin = 0.5 * (a + b);
      if (det_at(tmin) <= det_tol) {
        traj.first_focal = bisect_crossing(m - 1, tmin, det_tol);
        break;
      }
    }
  }
  return traj;
}

Matrix epsilon_bend(const Matrix& II_S, double eps) {
  if (eps < 0) throw std::invalid_argument("epsilon_bend: eps must be >= 0");
  return II_S - eps * Matrix::Identity(II_S.rows(), II_S.cols());
}

Vector kernel_direction(const Matrix& J) {
  Eigen::JacobiSVD<Matrix> svd(J, Eigen::ComputeFullV);
  return svd.matrixV().col(J.cols() - 1);
}

namespace {

// Composite Simpson over a uniform grid with an odd number of samples.
double simpson(const std::vector<double>& f, double h) {
  const size_t n = f.size();
  double s = f.front() + f.back();
  for (size_t i = 1; i + 1 < n; ++i) s += f[i] * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

SecondVariation second_variation(const CurvatureProfile& profile, const Matrix& B0, double eps,
                                 double T, const Vector& v, double tol, double kernel_tol) {
  check_profile(profile, T);
  const int n = profile.dim;
  if (v.size() != n) throw std::invalid_argument("second_variation: v dimension mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("second_variation: v must be a unit vector");
  if (eps < 0) throw std::invalid_argument("second_variation: eps must be >= 0");

  const Matrix B0s = symmetrize(B0);
  const Matrix Beps0 = B0s + eps * Matrix::Identity(n, n);

  const int samples = 801;  // odd, for Simpson
  const JacobiTrajectory traj = integrate_jacobi(profile, Beps0, T, tol, samples);

  const Matrix& JT = traj.J_of_t.back();
  if ((JT * v).norm() > kernel_tol * (1.0 + JT.norm()))
    throw std::invalid_argument("second_variation: v is not in the kernel of J_eps(T)");

  std::vector<double> vbar_sq(samples), vbarp_sq(samples), curv(samples);
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = traj.times[i];
    const double damp = std::exp(-eps * t);
    const Vector Vb = traj.J_of_t[i] * v * damp;
    const Vector Vbp = (traj.Jprime_of_t[i] * v - eps * (traj.J_of_t[i] * v)) * damp;
    vbar_sq[i] = Vb.squaredNorm();
    vbarp_sq[i] = Vbp.squaredNorm();
    curv[i] = Vb.dot(profile.R_of_t(t) * Vb);
    sup = std::max(sup, Vb.norm());
  }
  const double h = T / (samples - 1);

  std::vector<double> index_integrand(samples);
  for (int i = 0; i < samples; ++i) index_integrand[i] = vbarp_sq[i] - curv[i];

  SecondVariation out;
  out.index_form = v.dot(B0s * v) + simpson(index_integrand, h);
  out.closed_form = -eps * vbar_sq.front() + eps * eps * simpson(vbar_sq, h);
  out.field_sup = sup;
  return out;
}

ComparisonReport verify_comparison(const CurvatureProfile& profile, const Matrix& II_S,
                                   double Lambda_ell, double c, int ell, double T, double tol,
                                   int random_frames, unsigned seed) {
  check_profile(profile, T);
  const int n = profile.dim;
  if (ell < 1 || ell > n) throw std::invalid_argument("verify_comparison: ell out of range");
  if (p_minus(II_S, ell) < Lambda_ell - 1e-9)
    throw std::invalid_argument("verify_comparison: p_minus(II_S, ell) < Lambda_ell");

  // Keep clear of both the comparison-solution blow-up and the Riccati one.
  const RiccatiState state = make_riccati_state(-Lambda_ell, c, T);
  const double T_eff = state.domain_end < T ? 0.9 * state.domain_end : T;

  const int samples = 101;
  for (int i = 0; i <= 16; ++i) {
    const double t = T_eff * i / 16.0;
    if (p_minus(profile.R_of_t(t), ell) < -c - 1e-9)
      throw std::invalid_argument("verify_comparison: profile violates p_minus(R, ell) >= -c");
  }

  const RiccatiTrajectory traj = integrate_riccati(profile, (-symmetrize(II_S)).eval(), T_eff,
                                                   tol, samples);

  std::mt19937_64 rng(seed);
  ComparisonReport rep;
  rep.frames_per_sample = 1 + random_frames;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.min_violation = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const double rhs = riccati_closed_form(-Lambda_ell, c, t);
    const Matrix& B = traj.B_of_t[i];
    // The sup over ell-subspaces of the normalized trace is attained on the
    // ell largest eigenvalues; random frames are redundancy.
    double lhs = trace_over_subspace(B, largest_eigenframe(B, ell)) / ell;
    for (int k = 0; k < random_frames; ++k) {
      const Matrix W = random_orthonormal_frame(rng, n, ell);
      lhs = std::max(lhs, trace_over_subspace(B, W) / ell);
    }
    const double viol = lhs - rhs;
    rep.max_violation = std::max(rep.max_violation, viol);
    rep.min_violation = std::min(rep.min_violation, viol);
    ++rep.samples;
  }
  rep.T_effective = traj.blowup_time ? *traj.blowup_time : T_eff;
  return rep;
}

}  // namespace cmpgeo
