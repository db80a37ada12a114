#include <doctest.h>

#include <random>

#include "cmpgeo/random.hpp"
#include "cmpgeo/spectral.hpp"
#include "support/test_helpers.hpp"

using namespace cmpgeo;

TEST_CASE("p_minus on simple matrices") {
  for (int ell = 1; ell <= 4; ++ell)
    CHECK(p_minus(Matrix::Identity(4, 4), ell) == doctest::Approx(1.0));

  Vector d(4);
  d << 2, 2, 2, -2;  // Dierkes-Schwab Hessian at the threshold, up to scale
  CHECK(p_minus(Matrix(d.asDiagonal()), 2) == doctest::Approx(0.0));

  Vector d2(3);
  d2 << 1, 2, 3;
  CHECK(p_minus(Matrix(d2.asDiagonal()), 2) == doctest::Approx(1.5));
  CHECK(p_minus(Matrix(d2.asDiagonal()), 2) ==
        doctest::Approx(testing::p_minus_subset_oracle(Matrix(d2.asDiagonal()), 2)));

  CHECK_THROWS_AS((void)p_minus(Matrix::Identity(3, 3), 0), std::invalid_argument);
  CHECK_THROWS_AS((void)p_minus(Matrix::Identity(3, 3), 4), std::invalid_argument);
}

TEST_CASE("trace_over_subspace") {
  Matrix frame(3, 2);
  frame.setZero();
  frame(0, 0) = 1;
  frame(2, 1) = 1;
  CHECK(trace_over_subspace(Matrix::Identity(3, 3), frame) == doctest::Approx(2.0));

  std::mt19937_64 rng(3);
  const Matrix T = random_symmetric(rng, 5);
  SUBCASE("matches the direct quadratic-form sum") {
    const Matrix W = random_orthonormal_frame(rng, 5, 3);
    double direct = 0;
    for (int j = 0; j < 3; ++j) direct += W.col(j).dot(T * W.col(j));
    CHECK(trace_over_subspace(T, W) == doctest::Approx(direct).epsilon(1e-13));
  }
  SUBCASE("eigenframe trace equals ell * p_minus") {
    const Matrix frame3 = smallest_eigenframe(T, 3);
    CHECK(trace_over_subspace(T, frame3) == doctest::Approx(3.0 * p_minus(T, 3)).epsilon(1e-12));
  }
  SUBCASE("rejects non-orthonormal bases") {
    Matrix bad = random_gaussian_matrix(rng, 5, 2);
    CHECK_THROWS_AS((void)trace_over_subspace(T, bad), std::invalid_argument);
  }
}

TEST_CASE("min_trace_subspace equals p_minus (Ky Fan)") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5;
    const Matrix A = random_symmetric(rng, n);
    for (int ell = 1; ell <= n; ++ell) {
      CHECK(std::abs(min_trace_subspace(A, ell) - p_minus(A, ell)) < 1e-10);
    }
  }

  Vector d(4);
  d << 0, 0, 1, 1;
  const Matrix D = d.asDiagonal();
  CHECK(min_trace_subspace(D, 3) == doctest::Approx(1.0 / 3));
  CHECK(testing::p_minus_subset_oracle(D, 3) == doctest::Approx(1.0 / 3));

  std::mt19937_64 rng2(23);
  const Matrix B = random_symmetric(rng2, 6);
  CHECK(min_trace_subspace(B, 6) == doctest::Approx(B.trace() / 6).epsilon(1e-12));
}

TEST_CASE("random frames never beat the minimum") {
  std::mt19937_64 rng(29);
  const Matrix A = random_symmetric(rng, 5);
  for (int ell = 1; ell <= 4; ++ell) {
    const double pm = p_minus(A, ell);
    for (int k = 0; k < 500; ++k) {
      const Matrix W = random_orthonormal_frame(rng, 5, ell);
      CHECK(trace_over_subspace(A, W) / ell >= pm - 1e-10);
    }
  }
}

TEST_CASE("p_minus structural properties") {
  std::mt19937_64 rng(31);
  SUBCASE("monotone in ell") {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix A = random_symmetric(rng, 6);
      for (int ell = 1; ell < 6; ++ell)
        CHECK(p_minus(A, ell) <= p_minus(A, ell + 1) + 1e-12);
    }
  }
  SUBCASE("translation by multiples of the identity") {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix A = random_symmetric(rng, 5);
      const double t = std::uniform_real_distribution<double>(-3, 3)(rng);
      for (int ell = 1; ell <= 5; ++ell) {
        CHECK(p_minus(A + t * Matrix::Identity(5, 5), ell) ==
              doctest::Approx(p_minus(A, ell) + t).epsilon(1e-10));
      }
    }
  }
  SUBCASE("concavity") {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix A = random_symmetric(rng, 5);
      const Matrix B = random_symmetric(rng, 5);
      for (int ell = 1; ell <= 5; ++ell) {
        CHECK(p_minus(0.5 * A + 0.5 * B, ell) >=
              0.5 * p_minus(A, ell) + 0.5 * p_minus(B, ell) - 1e-10);
      }
    }
  }
  SUBCASE("symmetrization is enforced") {
    std::mt19937_64 r2(37);
    const Matrix G = random_gaussian_matrix(r2, 4, 4);
    const Matrix S = symmetrize(G);
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(p_minus(G, 2) == doctest::Approx(p_minus(S, 2)));
  }
}
