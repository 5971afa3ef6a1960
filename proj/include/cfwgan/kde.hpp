// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cfwgan {

enum class BandwidthRule {
  Silverman,  // 2.345 sigma M^-1/5, density-optimal for the Epanechnikov kernel
  Plugin,     // 2.345 sigma M^-1/3, undersmoothed for plug-in functionals of F
};

BandwidthRule parse_bandwidth_rule(std::string_view name);
const char* to_string(BandwidthRule rule) noexcept;
double bandwidth(std::span<const double> samples, BandwidthRule rule);

// Epanechnikov kernel estimate over a sorted sample.
class KdeModel {
 public:
  static KdeModel fit(std::span<const double> samples, std::optional<double> h = std::nullopt);
  static KdeModel fit(std::span<const double> samples, BandwidthRule rule);

  double cdf_hat(double x) const;
  double quantile_hat(double p) const;
  double pdf_hat(double x) const;

  double bandwidth() const noexcept { return h_; }
  std::size_t size() const noexcept { return xs_.size(); }
  std::span<const double> samples() const noexcept { return xs_; }
  // True when the kernel windows [x_i - h, x_i + h] are pairwise disjoint.
  bool disjoint() const noexcept { return disjoint_; }

 private:
  std::vector<double> xs_;
  double h_ = 0.0;
  bool disjoint_ = false;
};

}  // namespace cfwgan
