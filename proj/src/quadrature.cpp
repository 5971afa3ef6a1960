// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

#include "cfwgan/errors.hpp"

namespace cfwgan {

namespace {

GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

struct Panel {
  bool upper;  // coordinates are complements 1 - u
  double a;
  double b;
};

std::vector<Panel> build_panels(std::span<const UnitPoint> breaks, int refinement) {
  std::vector<double> lo{0.0, 0.5}, hi{0.0, 0.5};
  for (int k = 2; k <= 60; ++k) {
    lo.push_back(std::ldexp(1.0, -k));
    hi.push_back(std::ldexp(1.0, -k));
  }
  for (const UnitPoint& p : breaks) {
    if (!(p.u > 0.0 && p.uc > 0.0)) continue;
    if (p.u <= 0.5) {
      lo.push_back(p.u);
    } else {
      hi.push_back(p.uc);
    }
  }
  std::sort(lo.begin(), lo.end());
  lo.erase(std::unique(lo.begin(), lo.end()), lo.end());
  std::sort(hi.begin(), hi.end());
  hi.erase(std::unique(hi.begin(), hi.end()), hi.end());

  const int split = 1 << refinement;
  std::vector<Panel> panels;
  panels.reserve((lo.size() + hi.size()) * split);
  auto add = [&](bool upper, const std::vector<double>& pts) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double a = pts[i], b = pts[i + 1];
      for (int s = 0; s < split; ++s) {
        panels.push_back({upper, a + (b - a) * s / split, a + (b - a) * (s + 1) / split});
      }
    }
  };
  add(false, lo);
  add(true, hi);
  return panels;
}

template <class Visit>
void for_each_node(const std::vector<Panel>& panels, const GaussRule& rule, Visit&& visit) {
  for (const Panel& p : panels) {
    const double mid = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
      const double t = mid + half * rule.x[k];
      const UnitPoint up = p.upper ? UnitPoint::from_upper(t) : UnitPoint::from_lower(t);
      visit(up, half * rule.w[k]);
    }
  }
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw_invalid("gauss_legendre: order out of range");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(make_gauss_legendre(n));
  return *slot;
}

std::vector<UnitNode> unit_nodes(std::span<const UnitPoint> breaks, int points, int refinement) {
  const auto panels = build_panels(breaks, refinement);
  std::vector<UnitNode> nodes;
  nodes.reserve(panels.size() * points);
  for_each_node(panels, gauss_legendre(points),
                [&](UnitPoint p, double w) { nodes.push_back({p, w}); });
  return nodes;
}

std::vector<double> integrate_unit(std::size_t components,
                                   const std::function<void(UnitPoint, double*)>& g,
                                   std::span<const UnitPoint> breaks,
                                   const UnitIntegrationOptions& opt) {
  const GaussRule& r20 = gauss_legendre(20);
  const GaussRule& r30 = gauss_legendre(30);
  std::vector<double> buf(components);
  std::vector<double> prev_err(components, 0.0);
  for (int level = 0; level <= opt.max_refinements; ++level) {
    const auto panels = build_panels(breaks, level);
    std::vector<double> i20(components, 0.0), i30(components, 0.0), l1(components, 0.0);
    for_each_node(panels, r20, [&](UnitPoint p, double w) {
      g(p, buf.data());
      for (std::size_t c = 0; c < components; ++c) i20[c] += w * buf[c];
    });
    for_each_node(panels, r30, [&](UnitPoint p, double w) {
      g(p, buf.data());
      for (std::size_t c = 0; c < components; ++c) {
        i30[c] += w * buf[c];
        l1[c] += w * std::abs(buf[c]);
      }
    });
    bool ok = true, stalled = level >= 2;
    for (std::size_t c = 0; c < components; ++c) {
      if (!std::isfinite(i30[c]) || !std::isfinite(i20[c])) {
        throw_numeric("integrate_unit: non-finite integrand value");
      }
      const double err = std::abs(i30[c] - i20[c]);
      if (err > std::max(opt.rel_tol * l1[c], opt.abs_tol)) {
        ok = false;
        if (err < 0.5 * prev_err[c]) stalled = false;
      }
      prev_err[c] = err;
    }
    if (ok) return i30;
    if (stalled) throw_numeric("integrate_unit: refinement stagnated");
  }
  throw_numeric("integrate_unit: no convergence after maximal refinement");
}

double integrate_unit(const std::function<double(UnitPoint)>& g, std::span<const UnitPoint> breaks,
                      const UnitIntegrationOptions& opt) {
  return integrate_unit(1, [&](UnitPoint p, double* out) { out[0] = g(p); }, breaks, opt)[0];
}

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt) {
  if (a == b) return 0.0;
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  double total = first.value, err = first.error;
  heap.push(first);
  int count = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (!std::isfinite(total)) throw_numeric("integrate_adaptive: non-finite integrand value");
    if (count >= opt.max_intervals) throw_numeric("integrate_adaptive: interval budget exhausted");
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw_numeric("integrate_adaptive: interval collapsed below machine resolution");
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
    if (count % 64 == 0) {
      // Recompute the running sums to shed accumulated cancellation error.
      std::priority_queue<Segment> copy = heap;
      total = 0.0;
      err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

}  // namespace cfwgan
