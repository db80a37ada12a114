// Eigenvalue-sum operators on dense symmetric forms.
//
// p_minus(A, l) is the average of the l algebraically smallest eigenvalues;
// by Ky Fan's theorem it equals the minimum of the normalized trace of A
// over l-dimensional subspaces, which min_trace_subspace evaluates through
// an explicit extremal frame.

#ifndef CMPGEO_SPECTRAL_HPP
#define CMPGEO_SPECTRAL_HPP

#include <Eigen/Dense>
#include <stdexcept>

namespace cmpgeo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

template <typename Derived>
Matrix symmetrize(const Eigen::MatrixBase<Derived>& a) {
  return 0.5 * (a + a.transpose()).eval();
}

/// Ascending eigenvalues of the symmetric part of a.
template <typename Derived>
Vector sym_eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sym_eigenvalues: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Mean of the ell smallest eigenvalues (with multiplicity).
template <typename Derived>
double p_minus(const Eigen::MatrixBase<Derived>& a, int ell) {
  if (a.rows() != a.cols()) throw std::invalid_argument("p_minus: matrix must be square");
  if (ell < 1 || ell > a.rows()) throw std::invalid_argument("p_minus: ell out of range");
  const Vector ev = sym_eigenvalues(a);
  return ev.head(ell).mean();
}

/// Sum of T(e_i, e_i) over the orthonormal columns of `basis`.
/// Columns must be pairwise orthonormal within 1e-10.
template <typename Derived, typename BasisDerived>
double trace_over_subspace(const Eigen::MatrixBase<Derived>& t,
                           const Eigen::MatrixBase<BasisDerived>& basis) {
  if (t.rows() != t.cols()) throw std::invalid_argument("trace_over_subspace: matrix must be square");
  if (basis.rows() != t.rows())
    throw std::invalid_argument("trace_over_subspace: basis dimension mismatch");
  const Matrix b = basis;
  const Matrix gram = b.transpose() * b;
  const double defect = (gram - Matrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw std::invalid_argument("trace_over_subspace: basis not orthonormal");
  return (b.transpose() * t * b).trace();
}

/// Minimum over ell-dimensional subspaces of the normalized trace of t.
/// Evaluated on the frame of the ell smallest eigenvectors; coincides with
/// p_minus by Ky Fan (asserted in the test suites through random frames).
template <typename Derived>
double min_trace_subspace(const Eigen::MatrixBase<Derived>& t, int ell) {
  if (t.rows() != t.cols()) throw std::invalid_argument("min_trace_subspace: matrix must be square");
  if (ell < 1 || ell > t.rows()) throw std::invalid_argument("min_trace_subspace: ell out of range");
  const Matrix ts = symmetrize(t);
  Eigen::SelfAdjointEigenSolver<Matrix> es(ts);
  const Matrix frame = es.eigenvectors().leftCols(ell);
  return trace_over_subspace(ts, frame) / ell;
}

/// Frame of the ell smallest-eigenvalue eigenvectors (ascending order).
template <typename Derived>
Matrix smallest_eigenframe(const Eigen::MatrixBase<Derived>& t, int ell) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(t));
  return es.eigenvectors().leftCols(ell);
}

/// Frame of the ell largest-eigenvalue eigenvectors.
template <typename Derived>
Matrix largest_eigenframe(const Eigen::MatrixBase<Derived>& t, int ell) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(t));
  return es.eigenvectors().rightCols(ell);
}

/// Spectral norm of a symmetric matrix (max |eigenvalue|).
template <typename Derived>
double sym_spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  return sym_eigenvalues(a).cwiseAbs().maxCoeff();
}

}  // namespace cmpgeo

#endif  // CMPGEO_SPECTRAL_HPP
