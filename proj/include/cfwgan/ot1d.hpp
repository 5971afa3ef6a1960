// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "cfwgan/distributions.hpp"
#include "cfwgan/sample_matrix.hpp"
#include "cfwgan/wgan1d.hpp"

namespace cfwgan {

class LinearGenerator;

// Monotone map x -> theta1 + theta2 Psi^-1(F(x)), with 1 - F in place of F
// when theta2 < 0.
class TransportMap1D {
 public:
  TransportMap1D(ContinuousDistribution1D source, Generator1D target)
      : source_(std::move(source)), target_(target) {}

  double operator()(double x) const;
  const ContinuousDistribution1D& source() const noexcept { return source_; }
  const Generator1D& target() const noexcept { return target_; }

 private:
  ContinuousDistribution1D source_;
  Generator1D target_;
};

TransportMap1D transport_map(const ContinuousDistribution1D& mu, const Generator1D& params);

// W_q between two equal-size empirical laws given as sorted arrays.
double wq_empirical(std::span<const double> x, std::span<const double> y, int q);

// Phi^-1((i - 1/2)/M), i = 1..M.
std::vector<double> midpoint_normal_scores(std::size_t m);

// W_q between the empirical law of sorted x and N(0, sigma^2), coupled at
// midpoint quantile levels.
double wq_to_gaussian(std::span<const double> x_sorted, double sigma, int q);
double wq_to_gaussian(std::span<const double> x_sorted, double sigma, int q,
                      std::span<const double> scores);

// Exhaustive search over all n! pairings; n <= 8.
double wq_brute(std::span<const double> x, std::span<const double> y, int q);

// (1/M) sum |omega^T x_i - t(x_i)|^2 with t the multi-to-one map
// F_{nu_omega}^-1 o F_{mu_omega} applied to omega^T x_i.
double unprojected_inner_value(const SampleMatrix& samples, std::span<const double> omega,
                               const LinearGenerator& theta);

}  // namespace cfwgan
