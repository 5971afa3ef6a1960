// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/wgan1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cfwgan/errors.hpp"
#include "cfwgan/special.hpp"

namespace cfwgan {

namespace {

struct CovTerms {
  double mean;
  double var;
  double cov_up;    // Cov(X, Psi^-1(F(X)))
  double cov_down;  // Cov(X, Psi^-1(1 - F(X)))
};

std::vector<UnitPoint> breaks_for(const ContinuousDistribution1D& mu, ActivationKind act) {
  auto br = mu.quantile_breakpoints();
  if (act == ActivationKind::ReLU) br.push_back({0.5, 0.5});
  return br;
}

void require_continuous(const ContinuousDistribution1D& mu, const char* who) {
  if (!mu.strictly_increasing_cdf()) {
    throw_precondition(std::string(who) + ": data law must have a continuous, strictly increasing CDF");
  }
}

CovTerms population_terms(const ContinuousDistribution1D& mu, ActivationKind act) {
  const auto br = breaks_for(mu, act);
  const double mean = integrate_unit([&](UnitPoint p) { return mu.quantile(p); }, br);
  const auto v = integrate_unit(
      3,
      [&](UnitPoint p, double* out) {
        const double y = mu.quantile(p) - mean;
        out[0] = y * y;
        out[1] = y * activation_quantile(act, p);
        out[2] = y * activation_quantile(act, p.complement());
      },
      br);
  return {mean, v[0], v[1], v[2]};
}

SolveReport finish(const CovTerms& t, ActivationKind act) {
  if (!(t.var > 0.0) || !std::isfinite(t.var)) throw_precondition("solver: data law is degenerate");
  const Moments hm = activation_moments(act);
  SolveReport rep;
  rep.params.activation = act;
  rep.condition_value = t.cov_up + t.cov_down;
  // Ties within rounding of the covariances go to the first branch.
  const double tie = 1e-12 * std::sqrt(t.var * hm.variance);
  const double cov = rep.condition_value >= -tie ? t.cov_up : t.cov_down;
  rep.branch = rep.condition_value >= -tie ? Branch::NonNegativeTheta2 : Branch::NonPositiveTheta2;
  rep.params.theta2 = cov / hm.variance;
  rep.params.theta1 = t.mean - rep.params.theta2 * hm.mean;
  rep.objective_value = std::max(0.0, t.var - cov * cov / hm.variance);
  return rep;
}

int sign_with_deadzone(double r, double scale) {
  if (std::abs(r) <= 1e-12 * scale) return 0;
  return r > 0.0 ? 1 : -1;
}

UnitPoint midpoint(UnitPoint a, UnitPoint b) {
  if (a.u <= 0.5 && b.u <= 0.5) return UnitPoint::from_lower(0.5 * (a.u + b.u));
  if (a.u > 0.5 && b.u > 0.5) return UnitPoint::from_upper(0.5 * (a.uc + b.uc));
  return UnitPoint::from_lower(0.5 * (a.u + b.u));
}

std::vector<double> clamped_kde_levels(std::span<const double> samples, const KdeModel& kde) {
  const double m = static_cast<double>(kde.size());
  const double lo = 1.0 / (m + 1.0);
  std::vector<double> f(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    f[i] = std::clamp(kde.cdf_hat(samples[i]), lo, 1.0 - lo);
  }
  return f;
}

}  // namespace

double Generator1D::quantile(UnitPoint p) const {
  const double h = theta2 >= 0.0 ? activation_quantile(activation, p)
                                 : activation_quantile(activation, p.complement());
  return theta1 + theta2 * h;
}

const char* to_string(Branch b) noexcept {
  return b == Branch::NonNegativeTheta2 ? "nonnegative" : "nonpositive";
}

double W1Residuals::norm() const { return std::hypot(r1, r2); }

double expect_quantile(const ContinuousDistribution1D& mu,
                       const std::function<double(double, UnitPoint)>& f,
                       std::span<const UnitPoint> extra_breaks) {
  auto br = mu.quantile_breakpoints();
  br.insert(br.end(), extra_breaks.begin(), extra_breaks.end());
  return integrate_unit([&](UnitPoint p) { return f(mu.quantile(p), p); }, br);
}

double expect(const ContinuousDistribution1D& mu, const std::function<double(double)>& f) {
  return expect_quantile(mu, [&](double x, UnitPoint) { return f(x); });
}

SolveReport solve_w2_general(const ContinuousDistribution1D& mu, ActivationKind activation) {
  if (activation == ActivationKind::ReLU) {
    throw_precondition("solve_w2_general: ReLU pushforward has a jump CDF; use solve_w2_relu");
  }
  require_continuous(mu, "solve_w2_general");
  return finish(population_terms(mu, activation), activation);
}

SolveReport solve_w2_relu(const ContinuousDistribution1D& mu) {
  require_continuous(mu, "solve_w2_relu");
  return finish(population_terms(mu, ActivationKind::ReLU), ActivationKind::ReLU);
}

SolveReport solve_w2_linear(const ContinuousDistribution1D& mu) {
  require_continuous(mu, "solve_w2_linear");
  const SolveReport rep = finish(population_terms(mu, ActivationKind::Linear), ActivationKind::Linear);
  const double dual = theta2_linear_gaussian_side(mu);
  if (!(std::abs(dual - rep.params.theta2) <= 1e-6 * std::max(1.0, std::abs(dual)))) {
    throw_numeric("solve_w2_linear: quantile-side and Gaussian-side theta2 disagree");
  }
  return rep;
}

SolveReport solve_w2(const ContinuousDistribution1D& mu, ActivationKind activation) {
  switch (activation) {
    case ActivationKind::Linear: return solve_w2_linear(mu);
    case ActivationKind::Sigmoid: return solve_w2_general(mu, activation);
    case ActivationKind::ReLU: return solve_w2_relu(mu);
  }
  throw_invalid("solve_w2: bad activation");
}

double theta2_linear_gaussian_side(const ContinuousDistribution1D& mu) {
  constexpr double kRange = 37.0;
  constexpr double kWidth = 0.5;
  std::vector<double> cuts;
  for (double z = -kRange; z <= kRange + 1e-12; z += kWidth) cuts.push_back(z);
  for (const UnitPoint& p : mu.quantile_breakpoints()) {
    if (p.u > 0.0 && p.uc > 0.0) {
      const double z = std_normal_quantile(p);
      if (std::abs(z) < kRange) cuts.push_back(z);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const GaussRule& rule = gauss_legendre(30);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    const double half = 0.5 * (cuts[k + 1] - cuts[k]);
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double z = mid + half * rule.x[j];
      const UnitPoint p{std_normal_cdf(z), std_normal_ccdf(z)};
      acc += half * rule.w[j] * mu.quantile(p) * z * std_normal_pdf(z);
    }
  }
  return acc;
}

double empirical_theta2_linear(std::span<const double> samples, const KdeModel& kde) {
  if (samples.size() < 2) throw_precondition("empirical_theta2_linear: need M >= 2");
  const auto f = clamped_kde_levels(samples, kde);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    acc += samples[i] * std_normal_quantile(UnitPoint::from_lower(f[i]));
  }
  return acc / static_cast<double>(samples.size());
}

SolveReport solve_w2_empirical(std::span<const double> samples, const KdeModel& kde,
                               ActivationKind activation) {
  if (samples.size() < 2) throw_precondition("solve_w2_empirical: need M >= 2");
  const auto f = clamped_kde_levels(samples, kde);
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  CovTerms t{mean, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double y = samples[i] - mean;
    const UnitPoint p = UnitPoint::from_lower(f[i]);
    t.var += y * y;
    t.cov_up += y * activation_quantile(activation, p);
    t.cov_down += y * activation_quantile(activation, p.complement());
  }
  t.var /= n;
  t.cov_up /= n;
  t.cov_down /= n;
  return finish(t, activation);
}

W1Residuals w1_residuals(const ContinuousDistribution1D& mu, const Generator1D& params) {
  if (!(params.theta2 > 0.0)) throw_precondition("w1_residuals: theta2 must be > 0");
  const ActivationKind act = params.activation;
  auto residual_sign = [&](UnitPoint p) {
    const double h = activation_quantile(act, p);
    const double x = mu.quantile(p);
    const double g = params.theta1 + params.theta2 * h;
    return sign_with_deadzone(g - x, std::abs(params.theta1) + std::abs(params.theta2 * h) + std::abs(x));
  };

  // Locate sign changes on the node grid so that no panel straddles one.
  auto br = breaks_for(mu, act);
  auto nodes = unit_nodes(br, 30);
  std::sort(nodes.begin(), nodes.end(), [](const UnitNode& a, const UnitNode& b) {
    return a.p.u < b.p.u || (a.p.u == b.p.u && a.p.uc > b.p.uc);
  });
  std::vector<UnitPoint> roots;
  int prev_sign = 0;
  UnitPoint prev{};
  for (const UnitNode& n : nodes) {
    const int s = residual_sign(n.p);
    if (s != 0 && prev_sign != 0 && s != prev_sign) {
      UnitPoint lo = prev, hi = n.p;
      for (int it = 0; it < 80; ++it) {
        const UnitPoint mid = midpoint(lo, hi);
        if ((mid.u == lo.u && mid.uc == lo.uc) || (mid.u == hi.u && mid.uc == hi.uc)) break;
        if (residual_sign(mid) == prev_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(hi);
    }
    if (s != 0) {
      prev_sign = s;
      prev = n.p;
    }
  }
  br.insert(br.end(), roots.begin(), roots.end());
  const auto v = integrate_unit(
      2,
      [&](UnitPoint p, double* out) {
        const double s = residual_sign(p);
        out[0] = s;
        out[1] = s * activation_quantile(act, p);
      },
      br);
  return {v[0], v[1]};
}

W1Residuals w1_residuals(std::span<const double> samples, const KdeModel& kde,
                         const Generator1D& params) {
  if (!(params.theta2 > 0.0)) throw_precondition("w1_residuals: theta2 must be > 0");
  if (samples.empty()) throw_precondition("w1_residuals: empty sample");
  const auto f = clamped_kde_levels(samples, kde);
  W1Residuals r;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double h = activation_quantile(params.activation, UnitPoint::from_lower(f[i]));
    const double g = params.theta1 + params.theta2 * h;
    const int s = sign_with_deadzone(
        g - samples[i], std::abs(params.theta1) + std::abs(params.theta2 * h) + std::abs(samples[i]));
    r.r1 += s;
    r.r2 += s * h;
  }
  r.r1 /= static_cast<double>(samples.size());
  r.r2 /= static_cast<double>(samples.size());
  return r;
}

double objective_w2(const ContinuousDistribution1D& mu, const Generator1D& params) {
  const auto br = breaks_for(mu, params.activation);
  return integrate_unit(
      [&](UnitPoint p) {
        const double e = mu.quantile(p) - params.quantile(p);
        return e * e;
      },
      br);
}

ObjectiveW2Evaluator::ObjectiveW2Evaluator(const ContinuousDistribution1D& mu,
                                           ActivationKind activation) {
  const auto br = breaks_for(mu, activation);
  for (const UnitNode& n : unit_nodes(br, 30)) {
    nodes_.push_back({n.w, mu.quantile(n.p), activation_quantile(activation, n.p),
                      activation_quantile(activation, n.p.complement())});
  }
}

double ObjectiveW2Evaluator::operator()(double theta1, double theta2) const {
  double acc = 0.0;
  if (theta2 >= 0.0) {
    for (const Node& n : nodes_) {
      const double e = n.x - theta1 - theta2 * n.h_up;
      acc += n.w * e * e;
    }
  } else {
    for (const Node& n : nodes_) {
      const double e = n.x - theta1 - theta2 * n.h_down;
      acc += n.w * e * e;
    }
  }
  return acc;
}

}  // namespace cfwgan
