// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfwgan/kde.hpp"
#include "cfwgan/wgan1d.hpp"

namespace cfwgan {

struct SgdConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch_size = 256;
  std::size_t iterations = 5000;
  std::uint64_t seed = 0;
  double theta1_init = 0.0;
  double theta2_init = 1.0;
  ActivationKind activation = ActivationKind::Linear;
  BandwidthRule bandwidth_rule = BandwidthRule::Silverman;
  std::optional<double> bandwidth;  // overrides the rule when set
};

struct SgdStep {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double residual_norm = 0.0;  // full-sample sign residuals
};

struct SgdTrace {
  std::vector<SgdStep> steps;  // iterations + 1 entries, the first at the initial point
};

struct SgdResult {
  Generator1D params;
  SgdTrace trace;
};

inline constexpr double kSgdTheta2Floor = 1e-6;
inline constexpr double kSgdDivergenceLimit = 1e6;

// Momentum SGD on the W1 objective with minibatch sign residuals as gradients.
SgdResult fit_w1(std::span<const double> samples, const SgdConfig& cfg);

}  // namespace cfwgan
