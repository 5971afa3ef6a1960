// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/special.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "cfwgan/errors.hpp"

namespace cfwgan {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt2Pi = 2.5066282746310005024;

double poly(const double* c, int n, double x) {
  double s = c[n - 1];
  for (int i = n - 2; i >= 0; --i) s = s * x + c[i];
  return s;
}

// Wichura (1988), algorithm AS 241, PPND16. Returns the lower-tail quantile
// for a probability p <= 1/2 given as p, with q = p - 1/2.
double ppnd16_lower(double p) {
  static constexpr double a[8] = {3.3871328727963666080e0,  1.3314166789178437745e+2,
                                  1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                  4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                  3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[8] = {1.0,
                                  4.2313330701600911252e+1,
                                  6.8718700749205790830e+2,
                                  5.3941960214247511077e+3,
                                  2.1213794301586595867e+4,
                                  3.9307895800092710610e+4,
                                  2.8729085735721942674e+4,
                                  5.2264952788528545610e+3};
  static constexpr double c[8] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                  5.76949722146069140550e0, 3.64784832476320460504e0,
                                  1.27045825245236838258e0, 2.41780725177450611770e-1,
                                  2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[8] = {1.0,
                                  2.05319162663775882187e0,
                                  1.67638483018380384940e0,
                                  6.89767334985100004550e-1,
                                  1.48103976427480074590e-1,
                                  1.51986665636164571966e-2,
                                  5.47593808499534494600e-4,
                                  1.05075007164441684324e-9};
  static constexpr double e[8] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                                  1.78482653991729133580e0, 2.96560571828504891230e-1,
                                  2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                  2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[8] = {1.0,
                                  5.99832206555887937690e-1,
                                  1.36929880922735805310e-1,
                                  1.48753612908506148525e-2,
                                  7.86869131145613259100e-4,
                                  1.84631831751005468180e-5,
                                  1.42151175831644588870e-7,
                                  2.04426310338993978564e-15};
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(a, 8, r) / poly(b, 8, r);
  }
  double r = std::sqrt(-std::log(p));
  if (r <= 5.0) {
    r -= 1.6;
    return -poly(c, 8, r) / poly(d, 8, r);
  }
  r -= 5.0;
  return -poly(e, 8, r) / poly(f, 8, r);
}

double lower_quantile(double p) {
  double x = ppnd16_lower(p);
  if (x > -37.5) {
    // One Halley step against the erfc-based CDF.
    const double err = 0.5 * std::erfc(-x / kSqrt2) - p;
    const double t = err * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= t / (1.0 + 0.5 * x * t);
  }
  return x;
}

}  // namespace

double std_normal_pdf(double x) noexcept { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double std_normal_cdf(double x) {
  if (std::isnan(x)) throw_domain("std_normal_cdf: NaN input");
  return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_ccdf(double x) {
  if (std::isnan(x)) throw_domain("std_normal_ccdf: NaN input");
  return 0.5 * std::erfc(x / kSqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw_domain("std_normal_quantile: p must lie in (0, 1)");
  return std_normal_quantile(UnitPoint::from_lower(p));
}

double std_normal_quantile(UnitPoint p) {
  if (!(p.u > 0.0 && p.uc > 0.0 && p.u <= 1.0 && p.uc <= 1.0)) {
    throw_domain("std_normal_quantile: p must lie in (0, 1)");
  }
  if (p.u == 0.5) return 0.0;
  return p.u < p.uc ? lower_quantile(p.u) : -lower_quantile(p.uc);
}

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

namespace {

// Below this d, Gamma((d+1)/2) and Gamma(d/2+1) are finite in double precision.
constexpr std::uint64_t kSeriesThreshold = 340;

// a(x) with Gamma(x+1/2)/Gamma(x+1) = x^{-1/2} (1 - a(x)) + O(x^{-15/2}).
double ratio_series_defect(double x) {
  const double y = 1.0 / x;
  return y * (1.0 / 8.0 +
              y * (-1.0 / 128.0 +
                   y * (-5.0 / 1024.0 +
                        y * (21.0 / 32768.0 + y * (399.0 / 262144.0 + y * (-869.0 / 4194304.0))))));
}

// Direct ratio in extended precision, so that the double results round correctly.
long double direct_ratio(std::uint64_t d) {
  const long double x = 0.5L * static_cast<long double>(d);
  return std::tgamma(x + 0.5L) / std::tgamma(x + 1.0L);
}

double ratio_defect(std::uint64_t d) {
  const double x = 0.5 * static_cast<double>(d);
  if (d < kSeriesThreshold) {
    return static_cast<double>(1.0L - std::sqrt(0.5L * static_cast<long double>(d)) * direct_ratio(d));
  }
  return ratio_series_defect(x);
}

}  // namespace

double gamma_ratio(std::uint64_t d) {
  if (d == 0) throw_domain("gamma_ratio: d must be >= 1");
  const double x = 0.5 * static_cast<double>(d);
  if (d < kSeriesThreshold) return static_cast<double>(direct_ratio(d));
  return (1.0 - ratio_series_defect(x)) / std::sqrt(x);
}

double one_minus_gamma_ratio_sq(std::uint64_t d) {
  if (d == 0) throw_domain("gamma_ratio_sq: d must be >= 1");
  const double a = ratio_defect(d);
  return a * (2.0 - a);
}

double gamma_ratio_sq(std::uint64_t d) {
  if (d != 0 && d < kSeriesThreshold) {
    const long double r = direct_ratio(d);
    return static_cast<double>(0.5L * static_cast<long double>(d) * r * r);
  }
  return 1.0 - one_minus_gamma_ratio_sq(d);
}

namespace {

// K and E from the complementary parameter mc = 1 - m, mc in (0, 1].
double agm_k(double mc) {
  double a = 1.0, b = std::sqrt(mc);
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

double agm_e(double m, double mc) {
  double a = 1.0, b = std::sqrt(mc);
  double sum = 0.5 * m;
  double weight = 1.0;
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    sum += weight * c * c;
    weight *= 2.0;
  }
  return std::numbers::pi / (a + b) * (1.0 - sum);
}

}  // namespace

double elliptic_k(double m) {
  if (!(m < 1.0)) throw_domain("elliptic_k: requires m < 1");
  if (m < 0.0) {
    // Imaginary-modulus transformation onto [0, 1).
    const double mc = 1.0 / (1.0 - m);
    return agm_k(mc) * std::sqrt(mc);
  }
  return agm_k(1.0 - m);
}

double elliptic_e(double m) {
  if (!(m <= 1.0)) throw_domain("elliptic_e: requires m <= 1");
  if (m == 1.0) return 1.0;
  if (m < 0.0) {
    const double mc = 1.0 / (1.0 - m);
    return agm_e(-m * mc, mc) / std::sqrt(mc);
  }
  return agm_e(m, 1.0 - m);
}

namespace {

void check_carlson_args(std::span<const double> b, std::span<const double> z, const char* who) {
  if (b.size() != z.size() || b.empty()) throw_invalid(std::string(who) + ": b and z sizes differ");
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(b[i] > 0.0) || !std::isfinite(b[i])) throw_domain(std::string(who) + ": b must be > 0");
    if (!(z[i] >= 0.0) || !std::isfinite(z[i])) throw_domain(std::string(who) + ": z must be >= 0");
  }
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

}  // namespace

double carlson_r_half(std::span<const double> b, std::span<const double> z) {
  check_carlson_args(b, z, "carlson_r_half");
  const double zmax = *std::max_element(z.begin(), z.end());
  if (zmax == 0.0) return 0.0;
  const double c = std::accumulate(b.begin(), b.end(), 0.0);
  // lambda = tau w^2 with w = v/(1-v) turns the lambda^{-3/2} weight into a
  // bounded integrand on (0, 1).
  const double tau = 1.0 / zmax;
  auto f = [&](double v) {
    const double w = v / (1.0 - v);
    const double lam = tau * w * w;
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * std::log1p(lam * z[i]);
    return -std::expm1(-s) / (v * v);
  };
  const double integral = 2.0 / std::sqrt(tau) * integrate_adaptive(f, 0.0, 1.0);
  const double scale = std::exp(log_gamma(c) - log_gamma(c + 0.5)) / (2.0 * std::sqrt(std::numbers::pi));
  return scale * integral;
}

double carlson_r_minus_half(std::span<const double> b, std::span<const double> z) {
  check_carlson_args(b, z, "carlson_r_minus_half");
  const double c = std::accumulate(b.begin(), b.end(), 0.0);
  double active = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (z[i] > 0.0) active += b[i];
  }
  if (!(active > 0.5)) throw_domain("carlson_r_minus_half: integral diverges");
  const double zmax = *std::max_element(z.begin(), z.end());
  const double tau = 1.0 / zmax;
  auto f = [&](double v) {
    const double w = v / (1.0 - v);
    const double t = tau * w * w;
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * std::log1p(t * z[i]);
    const double om = 1.0 - v;
    return std::exp(-s) / (om * om);
  };
  const double integral = 2.0 * std::sqrt(tau) * integrate_adaptive(f, 0.0, 1.0);
  return integral * std::exp(-log_beta(0.5, c - 0.5));
}

}  // namespace cfwgan
