// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cfwgan/distributions.hpp"
#include "cfwgan/kde.hpp"

namespace cfwgan {

// G(Z) = theta1 + theta2 h(Z).
struct Generator1D {
  double theta1 = 0.0;
  double theta2 = 1.0;
  ActivationKind activation = ActivationKind::Linear;

  double operator()(double z) const { return theta1 + theta2 * activation_apply(activation, z); }
  // Quantile of the generated law at level p.
  double quantile(UnitPoint p) const;
};

enum class Branch { NonNegativeTheta2, NonPositiveTheta2 };
const char* to_string(Branch b) noexcept;

struct SolveReport {
  Generator1D params;
  Branch branch = Branch::NonNegativeTheta2;
  double objective_value = 0.0;  // squared W2
  // Cov(X, Psi^-1(F(X)) + Psi^-1(1 - F(X))); the first branch is taken when >= 0.
  double condition_value = 0.0;
};

// E_mu[f(X)] as the integral of f(F^-1(u)) over (0, 1).
double expect(const ContinuousDistribution1D& mu, const std::function<double(double)>& f);
// As above with the integrand also seeing the level u of x = F^-1(u).
double expect_quantile(const ContinuousDistribution1D& mu,
                       const std::function<double(double x, UnitPoint u)>& f,
                       std::span<const UnitPoint> extra_breaks = {});

SolveReport solve_w2_general(const ContinuousDistribution1D& mu, ActivationKind activation);
SolveReport solve_w2_relu(const ContinuousDistribution1D& mu);
SolveReport solve_w2_linear(const ContinuousDistribution1D& mu);
SolveReport solve_w2(const ContinuousDistribution1D& mu, ActivationKind activation);

// theta2* of the linear generator from the Gaussian side, E[F^-1(Phi(Z)) Z],
// integrated over z rather than over quantile levels.
double theta2_linear_gaussian_side(const ContinuousDistribution1D& mu);

// Plug-in estimates on a sample with F replaced by the KDE estimate, clamped
// to [1/(M+1), M/(M+1)].
double empirical_theta2_linear(std::span<const double> samples, const KdeModel& kde);
SolveReport solve_w2_empirical(std::span<const double> samples, const KdeModel& kde,
                               ActivationKind activation);

struct W1Residuals {
  double r1 = 0.0;
  double r2 = 0.0;
  double norm() const;
};

W1Residuals w1_residuals(const ContinuousDistribution1D& mu, const Generator1D& params);
W1Residuals w1_residuals(std::span<const double> samples, const KdeModel& kde,
                         const Generator1D& params);

double objective_w2(const ContinuousDistribution1D& mu, const Generator1D& params);

// Squared W2 against a fixed mu and activation for many parameter values.
class ObjectiveW2Evaluator {
 public:
  ObjectiveW2Evaluator(const ContinuousDistribution1D& mu, ActivationKind activation);
  double operator()(double theta1, double theta2) const;

 private:
  struct Node {
    double w, x, h_up, h_down;
  };
  std::vector<Node> nodes_;
};

}  // namespace cfwgan
