// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cfwgan/errors.hpp"

namespace cfwgan {

namespace {

// Epanechnikov CDF on [-1, 1].
inline double kernel_cdf(double t) { return 0.25 * (2.0 + 3.0 * t - t * t * t); }

double sample_stddev(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

void check_samples(std::span<const double> samples, std::size_t minimum) {
  if (samples.size() < minimum) {
    throw_precondition("kde fit: need at least " + std::to_string(minimum) + " samples");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw_precondition("kde fit: samples must be finite");
  }
}

}  // namespace

BandwidthRule parse_bandwidth_rule(std::string_view name) {
  if (name == "silverman") return BandwidthRule::Silverman;
  if (name == "plugin") return BandwidthRule::Plugin;
  throw_invalid("unknown bandwidth rule '" + std::string(name) + "'");
}

const char* to_string(BandwidthRule rule) noexcept {
  return rule == BandwidthRule::Silverman ? "silverman" : "plugin";
}

double bandwidth(std::span<const double> samples, BandwidthRule rule) {
  check_samples(samples, 2);
  const double sigma = sample_stddev(samples);
  if (!(sigma > 0.0)) throw_precondition("kde fit: samples have zero variance");
  const double m = static_cast<double>(samples.size());
  const double expo = rule == BandwidthRule::Silverman ? -0.2 : -1.0 / 3.0;
  return 2.345 * sigma * std::pow(m, expo);
}

KdeModel KdeModel::fit(std::span<const double> samples, BandwidthRule rule) {
  return fit(samples, cfwgan::bandwidth(samples, rule));
}

KdeModel KdeModel::fit(std::span<const double> samples, std::optional<double> h) {
  check_samples(samples, h ? 1 : 2);
  KdeModel model;
  model.xs_.assign(samples.begin(), samples.end());
  std::sort(model.xs_.begin(), model.xs_.end());
  if (h) {
    if (!(*h > 0.0) || !std::isfinite(*h)) throw_precondition("kde fit: bandwidth must be positive");
    model.h_ = *h;
  } else {
    model.h_ = cfwgan::bandwidth(model.xs_, BandwidthRule::Silverman);
  }
  model.disjoint_ = true;
  for (std::size_t i = 1; i < model.xs_.size(); ++i) {
    if (model.xs_[i] - model.xs_[i - 1] < 2.0 * model.h_) {
      model.disjoint_ = false;
      break;
    }
  }
  return model;
}

double KdeModel::cdf_hat(double x) const {
  if (std::isnan(x)) throw_domain("cdf_hat: NaN input");
  const double h = h_;
  if (x <= xs_.front() - h) return 0.0;
  if (x >= xs_.back() + h) return 1.0;
  // Kernels with x_i <= x - h are fully accumulated; those with x_i >= x + h
  // contribute nothing; the rest contribute their partial integral.
  const auto full_end = std::upper_bound(xs_.begin(), xs_.end(), x - h);
  const auto window_end = std::lower_bound(full_end, xs_.end(), x + h);
  double acc = static_cast<double>(full_end - xs_.begin());
  for (auto it = full_end; it != window_end; ++it) acc += kernel_cdf((x - *it) / h);
  const double value = acc / static_cast<double>(xs_.size());
  return std::clamp(value, 0.0, 1.0);
}

double KdeModel::pdf_hat(double x) const {
  if (std::isnan(x)) throw_domain("pdf_hat: NaN input");
  const double h = h_;
  const auto lo = std::upper_bound(xs_.begin(), xs_.end(), x - h);
  const auto hi = std::lower_bound(lo, xs_.end(), x + h);
  double acc = 0.0;
  for (auto it = lo; it != hi; ++it) {
    const double t = (x - *it) / h;
    acc += 0.75 * (1.0 - t * t);
  }
  return acc / (static_cast<double>(xs_.size()) * h);
}

double KdeModel::quantile_hat(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw_domain("quantile_hat: p must lie in (0, 1)");
  const std::size_t m = xs_.size();
  const double mp = static_cast<double>(m) * p;
  if (disjoint_) {
    const double lf = std::floor(mp);
    const auto l = static_cast<std::size_t>(lf);
    if (mp == lf && l >= 1) return xs_[l - 1] + h_;
    const double t = 2.0 * std::sin(std::asin(2.0 * (mp - lf) - 1.0) / 3.0);
    return xs_[l] + t * h_;
  }
  double lo = xs_.front() - h_, hi = xs_.back() + h_;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (cdf_hat(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace cfwgan
