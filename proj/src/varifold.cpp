#include "cmpgeo/varifold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmpgeo {

double DiscreteVarifold::bounding_radius() const {
  double r = 0.0;
  for (int i = 0; i < size(); ++i) r = std::max(r, points.col(i).norm());
  return r;
}

void DiscreteVarifold::validate() const {
  const int m = ambient_dim();
  const int n = size();
  if (ell < 1 || ell >= m)
    throw std::invalid_argument("DiscreteVarifold: need 1 <= ell < ambient_dim");
  if (weights.size() != n || static_cast<int>(planes.size()) != n ||
      static_cast<int>(boundary.size()) != n)
    throw std::invalid_argument("DiscreteVarifold: inconsistent sizes");
  for (int i = 0; i < n; ++i) {
    if (!(weights[i] > 0)) throw std::invalid_argument("DiscreteVarifold: weights must be > 0");
    const Matrix& f = planes[i];
    if (f.rows() != m || f.cols() != ell)
      throw std::invalid_argument("DiscreteVarifold: frame size mismatch");
    const double defect =
        (f.transpose() * f - Matrix::Identity(ell, ell)).cwiseAbs().maxCoeff();
    if (defect > 1e-8) throw std::invalid_argument("DiscreteVarifold: frame not orthonormal");
  }
}

double default_fd_step(const DiscreteVarifold& V) {
  Vector lo = V.points.rowwise().minCoeff();
  Vector hi = V.points.rowwise().maxCoeff();
  const double diag = (hi - lo).norm();
  return 1e-5 * (diag > 0 ? diag : 1.0);
}

double tangential_divergence(const TestField& Z, const Vector& p, const Matrix& plane,
                             double fd_step) {
  if (Z.jacobian) {
    const Matrix D = Z.jacobian(p);
    double div = 0.0;
    for (int j = 0; j < plane.cols(); ++j) div += plane.col(j).dot(D * plane.col(j));
    return div;
  }
  if (!(fd_step > 0)) throw std::invalid_argument("tangential_divergence: fd_step must be > 0");
  double div = 0.0;
  for (int j = 0; j < plane.cols(); ++j) {
    const Vector e = plane.col(j);
    const Vector zp = Z.Z(p + fd_step * e);
    const Vector zm = Z.Z(p - fd_step * e);
    div += e.dot(zp - zm) / (2.0 * fd_step);
  }
  return div;
}

double first_variation(const DiscreteVarifold& V, const TestField& Z, double fd_step) {
  if (fd_step == 0.0) fd_step = default_fd_step(V);
  if (!(fd_step > 0)) throw std::invalid_argument("first_variation: fd_step must be > 0");
  const bool has_support = Z.support_radius > 0 && Z.center.size() == V.points.rows();
  double sum = 0.0;
  for (int i = 0; i < V.size(); ++i) {
    // Skip atoms outside the support ball; their divergence is zero.
    if (has_support && (V.points.col(i) - Z.center).norm() > Z.support_radius + fd_step)
      continue;
    sum += V.weights[i] * tangential_divergence(Z, V.points.col(i), V.planes[i], fd_step);
  }
  return sum;
}

std::vector<std::uint8_t> dilated_boundary_mask(const DiscreteVarifold& V, int k) {
  const int n = V.size();
  std::vector<std::uint8_t> mask(V.boundary.begin(), V.boundary.end());
  std::vector<int> bidx;
  for (int i = 0; i < n; ++i)
    if (V.boundary[i]) bidx.push_back(i);
  if (bidx.empty()) return mask;
  std::vector<std::pair<double, int>> dist(n);
  for (int b : bidx) {
    for (int i = 0; i < n; ++i)
      dist[i] = {(V.points.col(i) - V.points.col(b)).squaredNorm(), i};
    const int kk = std::min<int>(k + 1, n);  // +1: the point itself
    std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
    for (int j = 0; j < kk; ++j) mask[dist[j].second] = 1;
  }
  return mask;
}

CurvatureBoundReport check_mean_curvature_bound(const DiscreteVarifold& V, double h,
                                                const std::vector<TestField>& fields,
                                                double fd_step) {
  if (h < 0) throw std::invalid_argument("check_mean_curvature_bound: h must be >= 0");
  if (fd_step == 0.0) fd_step = default_fd_step(V);
  const auto near_boundary = dilated_boundary_mask(V);
  const double scale = 1e-14 * std::max(1.0, V.bounding_radius());

  CurvatureBoundReport rep;
  rep.mass = V.mass();
  rep.min_value = std::numeric_limits<double>::infinity();
  for (size_t f = 0; f < fields.size(); ++f) {
    const TestField& Z = fields[f];
    for (int i = 0; i < V.size(); ++i) {
      if (near_boundary[i] && Z.Z(V.points.col(i)).norm() > scale)
        throw std::invalid_argument(
            "check_mean_curvature_bound: field support meets the (dilated) boundary");
    }
    double val = first_variation(V, Z, fd_step);
    for (int i = 0; i < V.size(); ++i)
      val += V.ell * V.weights[i] * h * Z.Z(V.points.col(i)).norm();
    rep.per_field.push_back(val);
    if (val < rep.min_value) {
      rep.min_value = val;
      rep.argmin_field = static_cast<int>(f);
    }
  }
  return rep;
}

std::vector<double> mass_in_balls(const DiscreteVarifold& V, const std::vector<double>& radii,
                                  const Vector& center) {
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] < radii[i - 1]) throw std::invalid_argument("mass_in_balls: radii must ascend");
  std::vector<double> out(radii.size(), 0.0);
  for (int i = 0; i < V.size(); ++i) {
    const double d = (V.points.col(i) - center).norm();
    // add the weight to every radius >= d
    const auto it = std::lower_bound(radii.begin(), radii.end(), d);
    for (size_t j = it - radii.begin(); j < radii.size(); ++j) out[j] += V.weights[i];
  }
  return out;
}

namespace {

struct LineFit {
  double slope, intercept, rms;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit{};
  fit.slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += e * e;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

GrowthDiagnostics growth_diagnostics(const DiscreteVarifold& V, double sigma, double alpha,
                                     const std::vector<double>& radii, const Vector& center) {
  if (radii.size() < 4) throw std::invalid_argument("growth_diagnostics: need at least 4 radii");
  if (!(radii.back() >= 10.0 * radii.front()))
    throw std::invalid_argument("growth_diagnostics: radii must span at least one decade");
  if (sigma < 0 || sigma > 2) throw std::invalid_argument("growth_diagnostics: sigma in [0,2]");

  GrowthDiagnostics g;
  g.radii = radii;
  g.masses = mass_in_balls(V, radii, center);

  const size_t half = radii.size() / 2;
  const bool log_normalized = std::abs(alpha - (2.0 - sigma)) <= 1e-12;
  double d0 = std::numeric_limits<double>::infinity();
  std::vector<double> lr, lm, u_seq, r_seq;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (g.masses[i] <= 0) continue;
    if (i >= half) {
      const double logm = std::log(g.masses[i]);
      const double norm = log_normalized ? std::log(radii[i])
                                         : std::pow(radii[i], 2.0 - sigma - alpha);
      d0 = std::min(d0, logm / norm);
      u_seq.push_back(logm / (radii[i] * radii[i]));
      r_seq.push_back(radii[i]);
    }
    lr.push_back(std::log(radii[i]));
    lm.push_back(std::log(g.masses[i]));
  }
  if (lr.size() < 4 || u_seq.size() < 2)
    throw std::invalid_argument(
        "growth_diagnostics: too few radii capture positive mass (move the radii into the "
        "support of the varifold)");
  g.d0_estimate = d0;

  // Power-law model: mass ~ C r^k on the upper radii; the tail integral
  // int r dr / mass behaves like int r^(1-k), divergent iff k <= 2.
  const size_t hi_count = lr.size() - lr.size() / 2;
  std::vector<double> lr_hi(lr.end() - hi_count, lr.end());
  std::vector<double> lm_hi(lm.end() - hi_count, lm.end());
  const LineFit fit = least_squares(lr_hi, lm_hi);
  g.fitted_exponent = fit.slope;

  const double k = fit.slope;
  const double band = 0.1;  // classification margin around the k = 2 boundary
  g.parabolic.value = k <= 2.0 + band;
  g.parabolic.confidence =
      std::clamp(std::abs(k - 2.0) / 0.5, 0.05, 1.0) * std::clamp(1.0 - 2.0 * fit.rms, 0.1, 1.0);
  g.parabolic.note = "extrapolated from fitted exponent " + std::to_string(k);

  // Stochastic completeness: the sigma = alpha = 0 condition asks for a
  // finite liminf of log mass / r^2; on samples we ask the normalized
  // sequence to be non-increasing in trend.
  const LineFit trend = least_squares(r_seq, u_seq);
  const double d0_sc = *std::min_element(u_seq.begin(), u_seq.end());
  g.stochastically_complete.value = trend.slope <= 1e-3 * std::max(1.0, std::abs(u_seq.front()));
  g.stochastically_complete.confidence = g.parabolic.confidence;
  g.stochastically_complete.note =
      "d0(0,0) estimate " + std::to_string(d0_sc) + ", trend slope " + std::to_string(trend.slope);
  return g;
}

GrowthDiagnostics growth_diagnostics(const DiscreteVarifold& V, double sigma, double alpha,
                                     const std::vector<double>& radii) {
  return growth_diagnostics(V, sigma, alpha, radii, Vector::Zero(V.ambient_dim()));
}

double radial_cutoff(double r, double R, double theta) {
  if (r <= theta * R) return 1.0;
  if (r >= R) return 0.0;
  const double s = (r - theta * R) / ((1.0 - theta) * R);
  return 1.0 - s * s * (3.0 - 2.0 * s);
}

double radial_cutoff_slope(double r, double R, double theta) {
  if (r <= theta * R || r >= R) return 0.0;
  const double w = (1.0 - theta) * R;
  const double s = (r - theta * R) / w;
  return -6.0 * s * (1.0 - s) / w;
}

}  // namespace cmpgeo
