// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "cfwgan/errors.hpp"
#include "cfwgan/kde.hpp"
#include "cfwgan/rng.hpp"
#include "cfwgan/special.hpp"
#include "cfwgan/wgan1d.hpp"
#include "oracles.hpp"

using namespace cfwgan;
using Dist = ContinuousDistribution1D;

namespace {

constexpr double kPi = std::numbers::pi;

// theta2* for Laplace(0, b) integrated in x-space: 2 int_0^inf x Phi^-1(1 - e^{-x/b}/2) f(x) dx.
double laplace_theta2_oracle(double b) {
  const boost::math::normal n01;
  boost::math::quadrature::exp_sinh<double> es;
  auto f = [&](double x) {
    const double tail = 0.5 * std::exp(-x / b);
    if (tail <= 0.0) return 0.0;
    return x * boost::math::quantile(boost::math::complement(n01, tail)) * tail / b;
  };
  return 2.0 * es.integrate(f, 1e-13);
}

// E|theta1 + theta2 h(z) - z| for Z ~ N(0, 1), where g(z) = theta1 + theta2 h(z) - z is
// strictly monotone; split at its root.
template <class H>
double w1_gaussian_oracle(double t1, double t2, H h) {
  auto g = [&](double z) { return t1 + t2 * h(z) - z; };
  boost::uintmax_t iters = 200;
  const auto root = boost::math::tools::bisect(
      g, -40.0, 40.0, boost::math::tools::eps_tolerance<double>(52), iters);
  const double z0 = 0.5 * (root.first + root.second);
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto pdf = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); };
  auto f = [&](double z) { return std::abs(g(z)) * pdf(z); };
  const double left = GK::integrate(f, -40.0, z0, 15, 1e-14);
  const double right = GK::integrate(f, z0, 40.0, 15, 1e-14);
  return left + right;
}

std::vector<double> draw(const Dist& d, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return d.sample(n, rng);
}

// Minimum of the objective over a 201 x 201 grid spanning +-5 natural scales.
double grid_min(const Dist& mu, ActivationKind act) {
  const ObjectiveW2Evaluator obj(mu, act);
  const Moments m = mu.moments();
  const Moments hm = activation_moments(act);
  const double sx = std::sqrt(m.variance);
  const double s2 = sx / std::sqrt(hm.variance);
  double best = INFINITY;
  for (int i = 0; i <= 200; ++i) {
    const double t1 = m.mean + sx * (-5.0 + 0.05 * i);
    for (int j = 0; j <= 200; ++j) {
      const double t2 = s2 * (-5.0 + 0.05 * j);
      best = std::min(best, obj(t1, t2));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("expect reference values") {
  CHECK(std::abs(expect(Dist::gaussian(0, 1), [](double x) { return x * x; }) - 1.0) < 1e-8);
  CHECK(std::abs(expect(Dist::laplace(0, std::sqrt(0.5)), [](double x) { return x * x; }) - 1.0) < 1e-8);
  const double v = expect_quantile(Dist::gaussian(0, 1),
                                   std::function<double(double, UnitPoint)>(
                                       [](double x, UnitPoint p) { return x * std_normal_quantile(p); }));
  CHECK(std::abs(v - 1.0) < 1e-7);
}

TEST_CASE("linear solver recovers Gaussian parameters") {
  for (auto [m, s] : {std::pair{0.0, 1.0}, {1.5, 2.0}, {-3.0, 0.25}, {10.0, 7.0}}) {
    const auto rep = solve_w2_linear(Dist::gaussian(m, s));
    CHECK(std::abs(rep.params.theta1 - m) < 1e-10);
    CHECK(std::abs(rep.params.theta2 - s) < 1e-10);
    CHECK(rep.objective_value < 1e-10);
    CHECK(objective_w2(Dist::gaussian(m, s), rep.params) < 1e-10);
    CHECK(rep.branch == Branch::NonNegativeTheta2);
  }
}

TEST_CASE("linear solver on Laplace matches x-space oracle") {
  const double b = std::sqrt(0.5);
  const double oracle = laplace_theta2_oracle(b);
  CHECK(std::abs(oracle - 0.98134408163) < 1e-10);
  const auto rep = solve_w2_linear(Dist::laplace(0, b));
  CHECK(std::abs(rep.params.theta2 - oracle) < 1e-10);
  CHECK(std::abs(rep.params.theta1) < 1e-12);
  CHECK(std::abs(theta2_linear_gaussian_side(Dist::laplace(0, b)) - oracle) < 1e-9);
}

TEST_CASE("quantile-side and Gaussian-side theta2 agree") {
  // E[U Phi^-1(U)] = E[Phi(Z) Z] = E[phi(Z)] = 1 / (2 sqrt(pi)).
  const auto rep = solve_w2_linear(Dist::uniform(0, 1));
  CHECK(std::abs(rep.params.theta1 - 0.5) < 1e-12);
  CHECK(std::abs(rep.params.theta2 - 0.5 / std::sqrt(kPi)) < 1e-9);
  for (const auto& d : {Dist::uniform(0, 1), Dist::uniform(-2, 5), Dist::laplace(1, 3),
                        Dist::logit_normal(0.7, 1.3), Dist::gaussian(2, 0.5)}) {
    const double a = solve_w2_linear(d).params.theta2;
    const double b = theta2_linear_gaussian_side(d);
    CHECK(std::abs(a - b) < 1e-6);
  }
}

TEST_CASE("sigmoid solver against Gauss-Hermite oracle") {
  // Psi^-1(F(X)) = sigmoid(X) for X ~ N(0, 1); Cov(X, sigmoid(X)) = E[sigmoid'(Z)] by Stein.
  const double cov = oracle::expect_normal([](double z) {
    const double s = oracle::sigmoid(z);
    return s * (1.0 - s);
  });
  const double var = oracle::expect_normal([](double z) {
    const double s = oracle::sigmoid(z) - 0.5;
    return s * s;
  }, 200);
  const auto rep = solve_w2_general(Dist::gaussian(0, 1), ActivationKind::Sigmoid);
  CHECK(std::abs(rep.condition_value) < 1e-10);
  CHECK(rep.branch == Branch::NonNegativeTheta2);
  CHECK(std::abs(rep.params.theta2 - cov / var) < 1e-6 * (cov / var));
  CHECK(std::abs(rep.params.theta1 - (0.0 - rep.params.theta2 * 0.5)) < 1e-9);
  CHECK(std::abs(rep.objective_value - (1.0 - cov * cov / var)) < 1e-8);
}

TEST_CASE("ReLU solver reference values") {
  const auto rep = solve_w2_relu(Dist::gaussian(0, 1));
  const double t2 = kPi / (kPi - 1.0);
  CHECK(std::abs(rep.params.theta2 - t2) < 1e-10);
  CHECK(std::abs(rep.params.theta1 + t2 / std::sqrt(2.0 * kPi)) < 1e-10);
  CHECK(std::abs(rep.objective_value - (1.0 - 2.0 * kPi / (kPi - 1.0) * 0.25)) < 1e-10);
  CHECK(std::abs(rep.objective_value - objective_w2(Dist::gaussian(0, 1), rep.params)) < 1e-7);
  CHECK(rep.branch == Branch::NonNegativeTheta2);

  const double m = 2.0, s = 3.0;
  const auto g = solve_w2_relu(Dist::gaussian(m, s));
  CHECK(std::abs(g.params.theta2 - s * t2) < 1e-9);
  CHECK(std::abs(g.params.theta1 - (m - s * std::sqrt(kPi / 2.0) / (kPi - 1.0))) < 1e-9);
}

TEST_CASE("ReLU second branch on a left-skewed law") {
  const Dist mu = Dist::logit_normal(2.0, 1.0);
  const auto rep = solve_w2_relu(mu);
  CHECK(rep.condition_value < 0.0);
  CHECK(rep.branch == Branch::NonPositiveTheta2);
  CHECK(rep.params.theta2 <= 0.0);
  CHECK(std::abs(rep.objective_value - objective_w2(mu, rep.params)) < 1e-7);
}

TEST_CASE("closed form beats the parameter grid") {
  struct Case {
    Dist mu;
    ActivationKind act;
  };
  const std::vector<Case> cases{
      {Dist::gaussian(0, 1), ActivationKind::Linear},
      {Dist::laplace(0, std::sqrt(0.5)), ActivationKind::Linear},
      {Dist::gaussian(0, 1), ActivationKind::Sigmoid},
      {Dist::logit_normal(1, 0.5), ActivationKind::Sigmoid},
      {Dist::gaussian(0, 1), ActivationKind::ReLU},
      {Dist::laplace(1, 2), ActivationKind::ReLU},
      {Dist::logit_normal(2, 1), ActivationKind::ReLU},
  };
  for (const auto& c : cases) {
    const auto rep = solve_w2(c.mu, c.act);
    const ObjectiveW2Evaluator obj(c.mu, c.act);
    const double at = obj(rep.params.theta1, rep.params.theta2);
    CHECK(at <= grid_min(c.mu, c.act) + 1e-6);
    CHECK(std::abs(at - rep.objective_value) < 1e-7);
    CHECK(std::abs(at - objective_w2(c.mu, rep.params)) < 1e-9);
    if (rep.branch == Branch::NonNegativeTheta2) {
      CHECK(rep.params.theta2 >= 0.0);
    } else {
      CHECK(rep.params.theta2 <= 0.0);
    }
  }
}

TEST_CASE("objective_w2 reference values and local probe") {
  CHECK(std::abs(objective_w2(Dist::gaussian(0, 1), {0.0, 0.0, ActivationKind::Linear}) - 1.0) < 1e-10);
  const Dist mu = Dist::laplace(0.3, 1.1);
  const auto rep = solve_w2_linear(mu);
  const double best = objective_w2(mu, rep.params);
  RngStream rng(7, 0);
  for (int k = 0; k < 100; ++k) {
    const double a = 2.0 * kPi * rng.uniform();
    Generator1D p = rep.params;
    p.theta1 += 0.01 * std::cos(a);
    p.theta2 += 0.01 * std::sin(a);
    CHECK(best <= objective_w2(mu, p));
  }
}

TEST_CASE("location-scale equivariance of the population solver") {
  const double b = 0.7;
  for (double a : {-2.0, 0.5, 3.0}) {
    for (ActivationKind act : {ActivationKind::Linear, ActivationKind::Sigmoid, ActivationKind::ReLU}) {
      const auto r0 = solve_w2(Dist::laplace(0, 1), act);
      const auto r1 = solve_w2(Dist::laplace(b, std::abs(a)), act);
      // Laplace is symmetric, so aX + b has the law of |a| X + b.
      CHECK(std::abs(r1.params.theta2 - std::abs(a) * r0.params.theta2) < 1e-9);
      CHECK(std::abs(r1.params.theta1 - (std::abs(a) * r0.params.theta1 + b)) < 1e-9);
    }
  }
}

TEST_CASE("location-scale equivariance of the empirical solver with branch flip") {
  const auto x = draw(Dist::logit_normal(2, 1), 4000, 3);
  const double h = 0.02;
  const auto k0 = KdeModel::fit(x, h);
  const auto r0 = solve_w2_empirical(x, k0, ActivationKind::ReLU);
  CHECK(r0.branch == Branch::NonPositiveTheta2);
  for (double a : {-2.0, 0.5, 3.0}) {
    const double b = -1.25;
    std::vector<double> y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [&](double v) { return a * v + b; });
    const auto k1 = KdeModel::fit(y, std::abs(a) * h);
    const auto r1 = solve_w2_empirical(y, k1, ActivationKind::ReLU);
    // The reflected KDE gives 1 - F, which swaps the two covariances.
    CHECK(std::abs(r1.params.theta2 - a * r0.params.theta2) < 1e-9 * std::abs(a));
    CHECK(std::abs(r1.params.theta1 - (a * r0.params.theta1 + b)) < 1e-9 * std::abs(a));
    CHECK(std::abs(r1.objective_value - a * a * r0.objective_value) < 1e-9);
    CHECK((r1.branch == r0.branch) == (a > 0));
  }
}

TEST_CASE("W1 residuals") {
  const auto g = w1_residuals(Dist::gaussian(1.5, 2.0), {1.5, 2.0, ActivationKind::Linear});
  CHECK(g.norm() < 1e-7);
  const auto shift = w1_residuals(Dist::gaussian(0, 1), {1.0, 1.0, ActivationKind::Linear});
  CHECK(std::abs(shift.r1 - 1.0) < 1e-12);
  const auto sc = w1_residuals(Dist::gaussian(0, 1), {0.0, 2.0, ActivationKind::Linear});
  CHECK(std::abs(sc.r1) < 1e-10);
  CHECK(std::abs(sc.r2 - std::sqrt(2.0 / kPi)) < 1e-9);
  CHECK_THROWS_AS(w1_residuals(Dist::gaussian(0, 1), {0.0, 0.0, ActivationKind::Linear}),
                  PreconditionError);
  CHECK_THROWS_AS(w1_residuals(Dist::gaussian(0, 1), {0.0, -1.0, ActivationKind::Linear}),
                  PreconditionError);
}

TEST_CASE("W1 residuals are the gradient of the W1 objective") {
  const double eps = 1e-5;
  auto check = [&](double t1, double t2, ActivationKind act, auto h) {
    const auto r = w1_residuals(Dist::gaussian(0, 1), {t1, t2, act});
    const double d1 = (w1_gaussian_oracle(t1 + eps, t2, h) - w1_gaussian_oracle(t1 - eps, t2, h)) / (2 * eps);
    const double d2 = (w1_gaussian_oracle(t1, t2 + eps, h) - w1_gaussian_oracle(t1, t2 - eps, h)) / (2 * eps);
    CHECK(std::abs(r.r1 - d1) < 1e-6);
    CHECK(std::abs(r.r2 - d2) < 1e-6);
  };
  auto lin = [](double z) { return z; };
  check(0.3, 1.5, ActivationKind::Linear, lin);
  check(-0.2, 0.4, ActivationKind::Linear, lin);
  check(0.1, 2.0, ActivationKind::Sigmoid, [](double z) { return oracle::sigmoid(z); });
  check(-1.0, 3.0, ActivationKind::Sigmoid, [](double z) { return oracle::sigmoid(z); });
}

TEST_CASE("empirical pipeline") {
  const auto x = draw(Dist::gaussian(0, 1), 50000, 11);
  const auto kde = KdeModel::fit(x, BandwidthRule::Plugin);
  const double t2 = empirical_theta2_linear(x, kde);
  CHECK(std::abs(t2 - 1.0) < 0.01);
  const auto rep = solve_w2_empirical(x, kde, ActivationKind::Linear);
  CHECK(std::abs(rep.params.theta2 - t2) < 1e-3);
  const auto r = w1_residuals(x, kde, {rep.params.theta1 + 10.0, rep.params.theta2, ActivationKind::Linear});
  CHECK(r.r1 == 1.0);

  const auto lap = draw(Dist::laplace(0, std::sqrt(0.5)), 50000, 12);
  const double tl = empirical_theta2_linear(lap, KdeModel::fit(lap, BandwidthRule::Plugin));
  CHECK(std::abs(tl - 0.98134408163) < 0.01);
}

TEST_CASE("solver preconditions") {
  CHECK_THROWS_AS(solve_w2_linear(Dist::empirical({1.0, 2.0, 3.0})), PreconditionError);
  CHECK_THROWS_AS(solve_w2_linear(Dist::rectified_gaussian(0, 1)), PreconditionError);
  CHECK_THROWS_AS(solve_w2_relu(Dist::rectified_gaussian(0, 1)), PreconditionError);
  CHECK_THROWS_AS(solve_w2_general(Dist::gaussian(0, 1), ActivationKind::ReLU), PreconditionError);
  CHECK_THROWS_AS(KdeModel::fit(std::vector<double>(10, 4.0)), PreconditionError);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(empirical_theta2_linear(one, KdeModel::fit(one, 1.0)), PreconditionError);
}
