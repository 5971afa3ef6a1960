// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cfwgan/errors.hpp"
#include "cfwgan/quadrature.hpp"
#include "cfwgan/special.hpp"

using namespace cfwgan;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {1, 2, 5, 20, 30, 64}) {
    const GaussRule& r = gauss_legendre(n);
    REQUIRE(r.x.size() == static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(s - exact) < 1e-14);
    }
    for (int i = 1; i < n; ++i) CHECK(r.x[i] > r.x[i - 1]);
  }
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);
}

TEST_CASE("unit-interval integrals with endpoint singularities") {
  CHECK(integrate_unit([](UnitPoint p) { return p.u * p.u; }) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  const double m2 = integrate_unit([](UnitPoint p) {
    const double z = std_normal_quantile(p);
    return z * z;
  });
  CHECK(std::abs(m2 - 1.0) < 1e-10);
  const double m4 = integrate_unit([](UnitPoint p) { return std::pow(std_normal_quantile(p), 4); });
  CHECK(std::abs(m4 - 3.0) < 1e-9);
  // log singularities at both ends: integral of log(u) + log(1 - u) is -2.
  const double lg = integrate_unit([](UnitPoint p) { return std::log(p.u) + std::log(p.uc); });
  CHECK(std::abs(lg + 2.0) < 1e-11);
}

TEST_CASE("breakpoints resolve kinks") {
  const UnitPoint br[] = {UnitPoint::from_lower(0.3)};
  const double v = integrate_unit([](UnitPoint p) { return std::abs(p.u - 0.3); }, br);
  CHECK(std::abs(v - (0.3 * 0.3 + 0.7 * 0.7) / 2.0) < 1e-14);
}

TEST_CASE("vector integrands share nodes") {
  const auto v = integrate_unit(
      3,
      [](UnitPoint p, double* out) {
        out[0] = 1.0;
        out[1] = p.u;
        out[2] = std_normal_quantile(p) * p.u;
      },
      {});
  CHECK(std::abs(v[0] - 1.0) < 1e-14);
  CHECK(std::abs(v[1] - 0.5) < 1e-14);
  // E[Z Phi(Z)] = 1 / (2 sqrt(pi)).
  CHECK(std::abs(v[2] - 0.5 / std::sqrt(std::numbers::pi)) < 1e-12);
}

TEST_CASE("non-integrable or non-finite integrands raise NumericError") {
  CHECK_THROWS_AS(integrate_unit([](UnitPoint) { return NAN; }), NumericError);
  CHECK_THROWS_AS(integrate_unit([](UnitPoint p) { return 1.0 / (p.u * p.u); }), NumericError);
}

TEST_CASE("unit nodes reproduce the composite rule") {
  const auto nodes = unit_nodes();
  double s = 0.0, m1 = 0.0;
  for (const auto& n : nodes) {
    s += n.w;
    m1 += n.w * n.p.u;
    CHECK(n.p.u > 0.0);
    CHECK(n.p.uc > 0.0);
  }
  CHECK(std::abs(s - 1.0) < 1e-14);
  CHECK(std::abs(m1 - 0.5) < 1e-14);
}

TEST_CASE("adaptive Gauss-Kronrod") {
  CHECK(integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(integrate_adaptive([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-9));
}
