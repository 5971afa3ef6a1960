// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cfwgan {

// A probability level carried together with its complement, so that levels
// within one ulp of 1 keep full relative accuracy in their distance to 1.
struct UnitPoint {
  double u;
  double uc;

  static UnitPoint from_lower(double u) { return {u, 1.0 - u}; }
  static UnitPoint from_upper(double uc) { return {1.0 - uc, uc}; }
  UnitPoint complement() const { return {uc, u}; }
};

// Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre over (0, 1) on a partition graded geometrically
// toward both endpoints (breakpoints 2^-k, k = 1..60, and their mirrors), plus
// any extra breakpoints. Each integral is accepted when the 20- and 30-point
// panel rules agree to rel_tol; panels are bisected otherwise, and a
// NumericError is thrown when the disagreement stops shrinking.
struct UnitIntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_refinements = 5;
};

std::vector<double> integrate_unit(
    std::size_t components, const std::function<void(UnitPoint, double*)>& g,
    std::span<const UnitPoint> breaks = {}, const UnitIntegrationOptions& opt = {});

double integrate_unit(const std::function<double(UnitPoint)>& g,
                      std::span<const UnitPoint> breaks = {},
                      const UnitIntegrationOptions& opt = {});

// Precomputed nodes and weights of the graded rule (30 points per panel),
// for callers that evaluate many integrals of the same measure.
struct UnitNode {
  UnitPoint p;
  double w;
};
std::vector<UnitNode> unit_nodes(std::span<const UnitPoint> breaks = {}, int points = 30,
                                 int refinement = 0);

// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
struct AdaptiveOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_intervals = 4000;
};

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt = {});

}  // namespace cfwgan
