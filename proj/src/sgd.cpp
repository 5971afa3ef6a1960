// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/sgd.hpp"

#include <algorithm>
#include <cmath>

#include "cfwgan/errors.hpp"
#include "cfwgan/rng.hpp"

namespace cfwgan {

namespace {

int residual_sign(double theta1, double theta2, double h, double x) {
  const double r = theta1 + theta2 * h - x;
  const double scale = std::abs(theta1) + std::abs(theta2 * h) + std::abs(x);
  if (std::abs(r) <= 1e-12 * scale) return 0;
  return r > 0.0 ? 1 : -1;
}

double full_residual_norm(std::span<const double> x, std::span<const double> h, double t1,
                          double t2) {
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int s = residual_sign(t1, t2, h[i], x[i]);
    r1 += s;
    r2 += s * h[i];
  }
  const double n = static_cast<double>(x.size());
  return std::hypot(r1 / n, r2 / n);
}

}  // namespace

SgdResult fit_w1(std::span<const double> samples, const SgdConfig& cfg) {
  if (samples.size() < 100) throw_precondition("fit_w1: need at least 100 samples");
  if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw_invalid("fit_w1: learning_rate must be > 0");
  }
  if (!(cfg.momentum >= 0.0 && cfg.momentum < 1.0)) throw_invalid("fit_w1: momentum must be in [0, 1)");
  if (cfg.batch_size == 0) throw_invalid("fit_w1: batch_size must be >= 1");
  if (!(cfg.theta2_init > 0.0) || !std::isfinite(cfg.theta1_init)) {
    throw_invalid("fit_w1: initial theta2 must be > 0");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw_precondition("fit_w1: non-finite sample");
  }

  const KdeModel kde = cfg.bandwidth ? KdeModel::fit(samples, *cfg.bandwidth)
                                     : KdeModel::fit(samples, cfg.bandwidth_rule);
  const double m = static_cast<double>(kde.size());
  const double lo = 1.0 / (m + 1.0);
  std::vector<double> h(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = std::clamp(kde.cdf_hat(samples[i]), lo, 1.0 - lo);
    h[i] = activation_quantile(cfg.activation, UnitPoint::from_lower(f));
  }

  RngStream rng(cfg.seed, kStreamOptimizer);
  double t1 = cfg.theta1_init, t2 = cfg.theta2_init;
  double v1 = 0.0, v2 = 0.0;
  SgdResult out;
  out.params.activation = cfg.activation;
  out.trace.steps.reserve(cfg.iterations + 1);
  out.trace.steps.push_back({t1, t2, full_residual_norm(samples, h, t1, t2)});
  const double inv_b = 1.0 / static_cast<double>(cfg.batch_size);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    double g1 = 0.0, g2 = 0.0;
    for (std::size_t b = 0; b < cfg.batch_size; ++b) {
      const std::size_t i = rng.below(samples.size());
      const int s = residual_sign(t1, t2, h[i], samples[i]);
      g1 += s;
      g2 += s * h[i];
    }
    v1 = cfg.momentum * v1 + g1 * inv_b;
    v2 = cfg.momentum * v2 + g2 * inv_b;
    t1 -= cfg.learning_rate * v1;
    t2 = std::max(t2 - cfg.learning_rate * v2, kSgdTheta2Floor);
    if (!(std::abs(t1) <= kSgdDivergenceLimit) || !(std::abs(t2) <= kSgdDivergenceLimit)) {
      throw_numeric("fit_w1: parameters diverged");
    }
    out.trace.steps.push_back({t1, t2, full_residual_norm(samples, h, t1, t2)});
  }
  out.params.theta1 = t1;
  out.params.theta2 = t2;
  return out;
}

}  // namespace cfwgan
