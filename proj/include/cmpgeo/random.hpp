// Seeded random constructions shared by the library and the test suites.

#ifndef CMPGEO_RANDOM_HPP
#define CMPGEO_RANDOM_HPP

#include <Eigen/Dense>
#include <random>

#include "cmpgeo/spectral.hpp"

namespace cmpgeo {

inline Matrix random_gaussian_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = gauss(rng);
  return m;
}

inline Matrix random_symmetric(std::mt19937_64& rng, int n) {
  return symmetrize(random_gaussian_matrix(rng, n, n));
}

/// Thin-Q of a Gaussian matrix: k orthonormal columns in dimension n.
inline Matrix random_orthonormal_frame(std::mt19937_64& rng, int n, int k) {
  const Matrix g = random_gaussian_matrix(rng, n, k);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  return q;
}

inline Vector random_unit_vector(std::mt19937_64& rng, int n) {
  Vector v = random_gaussian_matrix(rng, n, 1);
  return v / v.norm();
}

/// Random symmetric matrix with eigenvalues drawn uniformly from [lo, hi].
inline Matrix random_symmetric_with_spectrum(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Vector ev(n);
  for (int i = 0; i < n; ++i) ev[i] = unif(rng);
  const Matrix q = random_orthonormal_frame(rng, n, n);
  return symmetrize(q * ev.asDiagonal() * q.transpose());
}

}  // namespace cmpgeo

#endif  // CMPGEO_RANDOM_HPP
