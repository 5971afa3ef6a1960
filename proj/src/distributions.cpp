// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cfwgan/errors.hpp"
#include "cfwgan/special.hpp"

namespace cfwgan {

namespace {

constexpr double kLogitClamp = 1e-15;

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logit_clamped(double v) {
  const double c = std::clamp(v, kLogitClamp, 1.0 - kLogitClamp);
  return std::log(c) - std::log1p(-c);
}

void check_level(UnitPoint p, const char* who) {
  if (!(p.u > 0.0 && p.uc > 0.0 && p.u <= 1.0 && p.uc <= 1.0)) {
    throw_domain(std::string(who) + ": p must lie in (0, 1)");
  }
}

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Quadrature moments for laws with no closed form.
Moments quantile_moments(const ContinuousDistribution1D& d) {
  const auto breaks = d.quantile_breakpoints();
  const double mean = integrate_unit([&](UnitPoint p) { return d.quantile(p); }, breaks);
  const double var = integrate_unit(
      [&](UnitPoint p) {
        const double y = d.quantile(p) - mean;
        return y * y;
      },
      breaks);
  return {mean, var};
}

}  // namespace

const char* to_string(ActivationKind kind) noexcept {
  switch (kind) {
    case ActivationKind::Linear: return "linear";
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::ReLU: return "relu";
  }
  return "unknown";
}

ActivationKind parse_activation(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "linear") return ActivationKind::Linear;
  if (s == "sigmoid") return ActivationKind::Sigmoid;
  if (s == "relu") return ActivationKind::ReLU;
  throw_invalid("unknown activation '" + std::string(name) + "'");
}

double activation_apply(ActivationKind kind, double z) {
  switch (kind) {
    case ActivationKind::Linear: return z;
    case ActivationKind::Sigmoid: return sigmoid(z);
    case ActivationKind::ReLU: return z > 0.0 ? z : 0.0;
  }
  throw_invalid("activation_apply: bad kind");
}

double activation_cdf(ActivationKind kind, double v) {
  if (std::isnan(v)) throw_domain("activation_cdf: NaN input");
  switch (kind) {
    case ActivationKind::Linear: return std_normal_cdf(v);
    case ActivationKind::Sigmoid:
      if (v <= 0.0) return 0.0;
      if (v >= 1.0) return 1.0;
      return std_normal_cdf(logit_clamped(v));
    case ActivationKind::ReLU: return v < 0.0 ? 0.0 : std_normal_cdf(v);
  }
  throw_invalid("activation_cdf: bad kind");
}

double activation_quantile(ActivationKind kind, double p) {
  if (!(p > 0.0 && p < 1.0)) throw_domain("activation_quantile: p must lie in (0, 1)");
  return activation_quantile(kind, UnitPoint::from_lower(p));
}

double activation_quantile(ActivationKind kind, UnitPoint p) {
  check_level(p, "activation_quantile");
  switch (kind) {
    case ActivationKind::Linear: return std_normal_quantile(p);
    case ActivationKind::Sigmoid: return sigmoid(std_normal_quantile(p));
    case ActivationKind::ReLU: return p.u <= 0.5 ? 0.0 : std_normal_quantile(p);
  }
  throw_invalid("activation_quantile: bad kind");
}

Moments activation_moments(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Linear: return {0.0, 1.0};
    case ActivationKind::ReLU:
      return {1.0 / std::sqrt(2.0 * std::numbers::pi),
              (std::numbers::pi - 1.0) / (2.0 * std::numbers::pi)};
    case ActivationKind::Sigmoid: {
      static const double var = integrate_unit([](UnitPoint p) {
        const double y = sigmoid(std_normal_quantile(p)) - 0.5;
        return y * y;
      });
      return {0.5, var};
    }
  }
  throw_invalid("activation_moments: bad kind");
}

ContinuousDistribution1D ContinuousDistribution1D::gaussian(double mean, double stddev) {
  if (!std::isfinite(mean) || !(stddev > 0.0) || !std::isfinite(stddev)) {
    throw_invalid("gaussian: need finite mean and stddev > 0");
  }
  return {Kind::Gaussian, mean, stddev};
}

ContinuousDistribution1D ContinuousDistribution1D::laplace(double mean, double scale) {
  if (!std::isfinite(mean) || !(scale > 0.0) || !std::isfinite(scale)) {
    throw_invalid("laplace: need finite mean and scale > 0");
  }
  return {Kind::Laplace, mean, scale};
}

ContinuousDistribution1D ContinuousDistribution1D::uniform(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(upper > lower)) {
    throw_invalid("uniform: need finite lower < upper");
  }
  return {Kind::Uniform, lower, upper};
}

ContinuousDistribution1D ContinuousDistribution1D::logit_normal(double m, double s) {
  if (!std::isfinite(m) || !(s > 0.0) || !std::isfinite(s)) {
    throw_invalid("logit_normal: need finite location and scale > 0");
  }
  return {Kind::LogitNormal, m, s};
}

ContinuousDistribution1D ContinuousDistribution1D::rectified_gaussian(double m, double s) {
  if (!std::isfinite(m) || !(s > 0.0) || !std::isfinite(s)) {
    throw_invalid("rectified_gaussian: need finite location and scale > 0");
  }
  return {Kind::RectifiedGaussian, m, s};
}

ContinuousDistribution1D ContinuousDistribution1D::empirical(std::vector<double> samples) {
  if (samples.empty()) throw_invalid("empirical: need at least one sample");
  for (double v : samples) {
    if (!std::isfinite(v)) throw_invalid("empirical: samples must be finite");
  }
  std::sort(samples.begin(), samples.end());
  ContinuousDistribution1D d(Kind::Empirical, 0.0, 0.0);
  d.samples_ = std::make_shared<const std::vector<double>>(std::move(samples));
  return d;
}

ContinuousDistribution1D ContinuousDistribution1D::activation_law(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Linear: return gaussian(0.0, 1.0);
    case ActivationKind::Sigmoid: return logit_normal(0.0, 1.0);
    case ActivationKind::ReLU: return rectified_gaussian(0.0, 1.0);
  }
  throw_invalid("activation_law: bad kind");
}

ContinuousDistribution1D ContinuousDistribution1D::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::vector<double> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view tok = rest.substr(0, comma);
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw_invalid("distribution spec: bad number '" + std::string(tok) + "'");
      }
      params.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto arg = [&](std::size_t i, double fallback) { return i < params.size() ? params[i] : fallback; };
  if (params.size() > 2) throw_invalid("distribution spec: at most two parameters");
  if (name == "gaussian" || name == "normal") return gaussian(arg(0, 0.0), arg(1, 1.0));
  if (name == "laplace") return laplace(arg(0, 0.0), arg(1, std::sqrt(0.5)));
  if (name == "uniform") return uniform(arg(0, 0.0), arg(1, 1.0));
  if (name == "logitnormal" || name == "logit-normal" || name == "sigmoid") {
    return logit_normal(arg(0, 0.0), arg(1, 1.0));
  }
  if (name == "relu" || name == "rectified" || name == "rectifiedgaussian") {
    return rectified_gaussian(arg(0, 0.0), arg(1, 1.0));
  }
  throw_invalid("distribution spec: unknown family '" + name + "'");
}

std::string ContinuousDistribution1D::describe() const {
  const std::string ab = format_number(a_) + "," + format_number(b_);
  switch (kind_) {
    case Kind::Gaussian: return "gaussian:" + ab;
    case Kind::Laplace: return "laplace:" + ab;
    case Kind::Uniform: return "uniform:" + ab;
    case Kind::LogitNormal: return "logitnormal:" + ab;
    case Kind::RectifiedGaussian: return "relu:" + ab;
    case Kind::Empirical: return "empirical:n=" + std::to_string(samples_->size());
  }
  return "unknown";
}

UnitPoint ContinuousDistribution1D::cdf_pair(double x) const {
  if (std::isnan(x)) throw_domain("cdf: NaN input");
  switch (kind_) {
    case Kind::Gaussian: {
      const double z = (x - a_) / b_;
      return {std_normal_cdf(z), std_normal_ccdf(z)};
    }
    case Kind::Laplace: {
      const double z = (x - a_) / b_;
      if (z < 0.0) {
        const double f = 0.5 * std::exp(z);
        return {f, 1.0 - f};
      }
      const double fc = 0.5 * std::exp(-z);
      return {1.0 - fc, fc};
    }
    case Kind::Uniform: {
      if (x <= a_) return {0.0, 1.0};
      if (x >= b_) return {1.0, 0.0};
      return {(x - a_) / (b_ - a_), (b_ - x) / (b_ - a_)};
    }
    case Kind::LogitNormal: {
      if (x <= 0.0) return {0.0, 1.0};
      if (x >= 1.0) return {1.0, 0.0};
      const double z = (logit_clamped(x) - a_) / b_;
      return {std_normal_cdf(z), std_normal_ccdf(z)};
    }
    case Kind::RectifiedGaussian: {
      if (x < 0.0) return {0.0, 1.0};
      const double z = (x - a_) / b_;
      return {std_normal_cdf(z), std_normal_ccdf(z)};
    }
    case Kind::Empirical: {
      const auto& s = *samples_;
      const auto k = static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin());
      const auto m = static_cast<double>(s.size());
      return {k / m, (m - k) / m};
    }
  }
  throw_invalid("cdf: bad kind");
}

double ContinuousDistribution1D::cdf(double x) const { return cdf_pair(x).u; }

double ContinuousDistribution1D::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw_domain("quantile: p must lie in (0, 1)");
  return quantile(UnitPoint::from_lower(p));
}

double ContinuousDistribution1D::quantile(UnitPoint p) const {
  check_level(p, "quantile");
  switch (kind_) {
    case Kind::Gaussian: return a_ + b_ * std_normal_quantile(p);
    case Kind::Laplace:
      return p.u <= 0.5 ? a_ + b_ * std::log(2.0 * p.u) : a_ - b_ * std::log(2.0 * p.uc);
    case Kind::Uniform: return p.u <= 0.5 ? a_ + (b_ - a_) * p.u : b_ - (b_ - a_) * p.uc;
    case Kind::LogitNormal: return sigmoid(a_ + b_ * std_normal_quantile(p));
    case Kind::RectifiedGaussian: {
      const double x = a_ + b_ * std_normal_quantile(p);
      return x > 0.0 ? x : 0.0;
    }
    case Kind::Empirical: {
      const auto& s = *samples_;
      const std::size_t m = s.size();
      std::size_t k;
      if (p.u <= 0.5) {
        k = static_cast<std::size_t>(std::ceil(static_cast<double>(m) * p.u));
      } else {
        k = m - static_cast<std::size_t>(std::floor(static_cast<double>(m) * p.uc));
      }
      k = std::clamp<std::size_t>(k, 1, m);
      return s[k - 1];
    }
  }
  throw_invalid("quantile: bad kind");
}

Moments ContinuousDistribution1D::moments() const {
  switch (kind_) {
    case Kind::Gaussian: return {a_, b_ * b_};
    case Kind::Laplace: return {a_, 2.0 * b_ * b_};
    case Kind::Uniform: return {0.5 * (a_ + b_), (b_ - a_) * (b_ - a_) / 12.0};
    case Kind::LogitNormal: return quantile_moments(*this);
    case Kind::RectifiedGaussian: {
      const double t = a_ / b_;
      const double cdf = std_normal_cdf(t), pdf = std_normal_pdf(t);
      const double m1 = a_ * cdf + b_ * pdf;
      const double m2 = (a_ * a_ + b_ * b_) * cdf + a_ * b_ * pdf;
      return {m1, m2 - m1 * m1};
    }
    case Kind::Empirical: {
      const auto& s = *samples_;
      const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
      double ss = 0.0;
      for (double v : s) ss += (v - mean) * (v - mean);
      return {mean, ss / static_cast<double>(s.size())};
    }
  }
  throw_invalid("moments: bad kind");
}

double ContinuousDistribution1D::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::Gaussian: return a_ + b_ * rng.normal();
    case Kind::Laplace: {
      const double u = rng.uniform();
      return u < 0.5 ? a_ + b_ * std::log(2.0 * u) : a_ - b_ * std::log(2.0 * (1.0 - u));
    }
    case Kind::Uniform: return a_ + (b_ - a_) * rng.uniform();
    case Kind::LogitNormal: return sigmoid(a_ + b_ * rng.normal());
    case Kind::RectifiedGaussian: {
      const double x = a_ + b_ * rng.normal();
      return x > 0.0 ? x : 0.0;
    }
    case Kind::Empirical: return (*samples_)[rng.below(samples_->size())];
  }
  throw_invalid("sample: bad kind");
}

std::vector<double> ContinuousDistribution1D::sample(std::size_t n, RngStream& rng) const {
  std::vector<double> out(n);
  for (auto& v : out) v = sample(rng);
  return out;
}

std::vector<UnitPoint> ContinuousDistribution1D::quantile_breakpoints() const {
  switch (kind_) {
    case Kind::Laplace: return {{0.5, 0.5}};
    case Kind::RectifiedGaussian: {
      const double t = a_ / b_;
      return {{std_normal_ccdf(t), std_normal_cdf(t)}};
    }
    case Kind::Empirical: {
      const std::size_t m = samples_->size();
      std::vector<UnitPoint> br;
      br.reserve(m);
      for (std::size_t i = 1; i < m; ++i) {
        br.push_back({static_cast<double>(i) / static_cast<double>(m),
                      static_cast<double>(m - i) / static_cast<double>(m)});
      }
      return br;
    }
    default: return {};
  }
}

bool ContinuousDistribution1D::strictly_increasing_cdf() const noexcept {
  return kind_ != Kind::RectifiedGaussian && kind_ != Kind::Empirical;
}

std::span<const double> ContinuousDistribution1D::sorted_samples() const {
  if (kind_ != Kind::Empirical) throw_invalid("sorted_samples: not an empirical law");
  return *samples_;
}

}  // namespace cfwgan
