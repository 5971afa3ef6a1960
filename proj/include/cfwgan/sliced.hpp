// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfwgan/linalg.hpp"
#include "cfwgan/sample_matrix.hpp"

namespace cfwgan {

// Root mean square per-coordinate scale, sqrt(E||X||^2 / d).
struct SigmaTilde {
  double value = 0.0;
};

// Theta in R^{d x r} with the eigenvalues S of Theta Theta^T (descending).
class LinearGenerator {
 public:
  explicit LinearGenerator(Matrix theta);
  // Caller guarantees that s holds the spectrum of theta theta^T.
  LinearGenerator(Matrix theta, std::vector<double> s);

  std::size_t dim() const noexcept { return theta_.rows(); }
  std::size_t rank() const noexcept { return theta_.cols(); }
  const Matrix& theta() const noexcept { return theta_; }
  const std::vector<double>& s() const noexcept { return s_; }
  // sqrt(omega^T Theta Theta^T omega).
  double projected_stddev(std::span<const double> omega) const;

 private:
  Matrix theta_;
  std::vector<double> s_;
};

SigmaTilde sigma_tilde(const SampleMatrix& samples);

double ub_value(std::uint64_t d, SigmaTilde st);

// sqrt(s) [U | 0] with s = g(d) sigma^2; U defaults to the identity.
LinearGenerator optimal_theta_w2(std::size_t d, std::size_t r, SigmaTilde st,
                                 const Matrix* u = nullptr);
// [U | 0] sigma, so that Theta Theta^T = sigma^2 I.
LinearGenerator optimal_theta_w1(std::size_t d, std::size_t r, SigmaTilde st,
                                 const Matrix* u = nullptr);

// Top-r eigenpairs of the sample covariance: Theta = U_r diag(sqrt(lambda)).
LinearGenerator r_pca(const SampleMatrix& samples, std::size_t r);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// E |sigma - sqrt(omega^T Theta Theta^T omega)|^q with omega ~ N(0, I/d).
McEstimate objective_mc(const LinearGenerator& theta, SigmaTilde st, int q, std::size_t n,
                        std::uint64_t seed);

// Gaussian-surrogate W2 objective minus sigma^2, by quadrature over the MGF
// representation.
double objective_quadrature(std::span<const double> s, SigmaTilde st);
// Same objective through R_{1/2}(1/2; S).
double objective_carlson(std::span<const double> s, SigmaTilde st);
// Same objective for d = 2 through complete elliptic integrals.
double closed_form_objective_d2(double s11, double s22, SigmaTilde st);

struct SlicedEvalConfig {
  std::size_t n_projections = 20000;
  int q = 2;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Sliced W_q between the data and N(0, Theta Theta^T) over uniform random
// directions: (mean over directions of W_q^q)^{1/q}, with a jackknife
// standard error. Direction k comes from its own stream under the seed, and the result
// does not depend on the thread count.
McEstimate sliced_wq_empirical(const SampleMatrix& samples, const LinearGenerator& theta,
                               const SlicedEvalConfig& cfg);
// Several generators evaluated on the same directions.
std::vector<McEstimate> sliced_wq_empirical(const SampleMatrix& samples,
                                            std::span<const LinearGenerator* const> thetas,
                                            const SlicedEvalConfig& cfg);

// Per-direction W_q^q for explicit unit directions (rows of `directions`).
std::vector<double> sliced_wq_terms(const SampleMatrix& samples, const LinearGenerator& theta,
                                    const Matrix& directions, int q);

// (mean)^{1/q} and its jackknife standard error from per-direction terms.
McEstimate jackknife_root_mean(std::span<const double> terms, int q);

}  // namespace cfwgan
