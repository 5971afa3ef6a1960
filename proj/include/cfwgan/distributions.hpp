// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfwgan/quadrature.hpp"
#include "cfwgan/rng.hpp"

namespace cfwgan {

enum class ActivationKind { Linear, Sigmoid, ReLU };

const char* to_string(ActivationKind kind) noexcept;
ActivationKind parse_activation(std::string_view name);

struct Moments {
  double mean;
  double variance;
};

// h(z) for each activation.
double activation_apply(ActivationKind kind, double z);
// Psi, the CDF of h(Z) with Z ~ N(0, 1).
double activation_cdf(ActivationKind kind, double v);
// Psi^{-1}; for ReLU every p <= 1/2 maps onto the atom at 0.
double activation_quantile(ActivationKind kind, double p);
double activation_quantile(ActivationKind kind, UnitPoint p);
Moments activation_moments(ActivationKind kind);

class ContinuousDistribution1D {
 public:
  enum class Kind { Gaussian, Laplace, Uniform, LogitNormal, RectifiedGaussian, Empirical };

  static ContinuousDistribution1D gaussian(double mean, double stddev);
  static ContinuousDistribution1D laplace(double mean, double scale);
  static ContinuousDistribution1D uniform(double lower, double upper);
  // Law of sigmoid(m + s Z).
  static ContinuousDistribution1D logit_normal(double m = 0.0, double s = 1.0);
  // Law of max(0, m + s Z).
  static ContinuousDistribution1D rectified_gaussian(double m = 0.0, double s = 1.0);
  // Uniform law on the given points.
  static ContinuousDistribution1D empirical(std::vector<double> samples);
  // The pushforward law of h(Z).
  static ContinuousDistribution1D activation_law(ActivationKind kind);

  // "gaussian:0,1", "laplace:0,0.7071", "uniform:0,1", "logitnormal:0,1", "relu:0,1".
  static ContinuousDistribution1D parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  std::string describe() const;

  double cdf(double x) const;
  // (F(x), 1 - F(x)) with both tails evaluated directly.
  UnitPoint cdf_pair(double x) const;
  double quantile(double p) const;
  double quantile(UnitPoint p) const;
  Moments moments() const;
  double sample(RngStream& rng) const;
  std::vector<double> sample(std::size_t n, RngStream& rng) const;

  // Levels where the quantile function has kinks or jumps.
  std::vector<UnitPoint> quantile_breakpoints() const;
  bool strictly_increasing_cdf() const noexcept;
  std::span<const double> sorted_samples() const;

 private:
  ContinuousDistribution1D(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
  std::shared_ptr<const std::vector<double>> samples_;
};

enum class ArNoise { Gaussian, StudentT };

struct Ar1Spec {
  double coefficient = 0.5;
  ArNoise noise = ArNoise::StudentT;
  double dof = 5.0;
  std::size_t burn_in = 64;
};

}  // namespace cfwgan
