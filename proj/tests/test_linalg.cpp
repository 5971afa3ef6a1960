// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "cfwgan/linalg.hpp"
#include "cfwgan/rng.hpp"

using namespace cfwgan;

TEST_CASE("matrix products") {
  Matrix a(2, 3);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = static_cast<double>(i * 3 + j + 1);
  }
  const Matrix g = gram(a);
  CHECK(g(0, 0) == 14.0);
  CHECK(g(0, 1) == 32.0);
  CHECK(g(1, 1) == 77.0);
  const Matrix p = a * a.transpose();
  CHECK(p(1, 0) == g(1, 0));
  CHECK(a.frobenius_sq() == 91.0);
  const Matrix i3 = Matrix::identity(3);
  const Matrix ai = a * i3;
  for (std::size_t k = 0; k < 6; ++k) CHECK(ai.data()[k] == a.data()[k]);
}

TEST_CASE("Jacobi eigensolver against Eigen") {
  RngStream rng(4, 0);
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    Matrix a(n, n);
    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double v = rng.normal();
        a(i, j) = a(j, i) = v;
        e(i, j) = e(j, i) = v;
      }
    }
    const SymmetricEigen eig = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
    const Eigen::VectorXd ev = es.eigenvalues();  // ascending
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(eig.values[k] - ev(n - 1 - k)) < 1e-12 * std::max(1.0, std::abs(ev(n - 1 - k))));
      if (k > 0) CHECK(eig.values[k] <= eig.values[k - 1]);
    }
    // A V = V diag(lambda) and V^T V = I.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += a(i, j) * eig.vectors(j, k);
        CHECK(std::abs(av - eig.values[k] * eig.vectors(i, k)) < 1e-11);
      }
      for (std::size_t l = 0; l < n; ++l) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += eig.vectors(i, k) * eig.vectors(i, l);
        CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("Jacobi on a diagonal and a rank-deficient matrix") {
  Matrix d(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  d(2, 2) = 2.0;
  const auto e = jacobi_eigen(d);
  CHECK(e.values == std::vector<double>{3.0, 2.0, 1.0});
  Matrix v(3, 1);
  v(0, 0) = 1.0;
  v(1, 0) = 2.0;
  v(2, 0) = 2.0;
  const auto r = jacobi_eigen(gram(v));
  CHECK(std::abs(r.values[0] - 9.0) < 1e-13);
  CHECK(std::abs(r.values[1]) < 1e-13);
  CHECK(std::abs(r.values[2]) < 1e-13);
}
