// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include "cfwgan/quadrature.hpp"

namespace cfwgan {

double std_normal_pdf(double x) noexcept;
double std_normal_cdf(double x);
// Upper tail 1 - Phi(x), accurate for large positive x.
double std_normal_ccdf(double x);
double std_normal_quantile(double p);
// Quantile at level p.u, evaluated from whichever of (u, 1-u) is smaller.
double std_normal_quantile(UnitPoint p);

double log_gamma(double x);

// g(d) = (d/2) (Gamma((d+1)/2) / Gamma(d/2+1))^2, in (0, 1) and increasing to 1.
double gamma_ratio_sq(std::uint64_t d);
// 1 - g(d), without cancellation for large d.
double one_minus_gamma_ratio_sq(std::uint64_t d);
// Gamma((d+1)/2) / Gamma(d/2+1).
double gamma_ratio(std::uint64_t d);

// Complete elliptic integrals with parameter m = k^2.
double elliptic_k(double m);
double elliptic_e(double m);

// Carlson R_{1/2}(b; z) and R_{-1/2}(b; z) by quadrature.
double carlson_r_half(std::span<const double> b, std::span<const double> z);
double carlson_r_minus_half(std::span<const double> b, std::span<const double> z);

}  // namespace cfwgan
