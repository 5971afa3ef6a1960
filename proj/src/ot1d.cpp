// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cfwgan/errors.hpp"
#include "cfwgan/sliced.hpp"
#include "cfwgan/special.hpp"

namespace cfwgan {

namespace {

void check_q(int q) {
  if (q != 1 && q != 2) throw_invalid("Wasserstein order q must be 1 or 2");
}

inline double power_q(double a, int q) { return q == 1 ? std::abs(a) : a * a; }
inline double root_q(double s, int q) { return q == 1 ? s : std::sqrt(s); }

// Correctly rounded running sum (Shewchuk partials), so that sums equal in
// exact arithmetic give the same double.
class ExactSum {
 public:
  void add(double x) {
    std::size_t i = 0;
    for (double y : partials_) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[i++] = lo;
      x = hi;
    }
    partials_.resize(i);
    partials_.push_back(x);
  }

  double value() const {
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n], lo = 0.0;
    while (n > 0) {
      const double x = hi, y = partials_[--n];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = 2.0 * lo, x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
};

// Adds |x - y|^q exactly: the difference as a two-term expansion, and for
// q = 2 its square as error-free products.
void add_power_exact(ExactSum& acc, double x, double y, int q) {
  double s = x - y;
  const double bb = s - x;
  double e = (x - (s - bb)) + (-y - bb);
  if (s < 0.0 || (s == 0.0 && e < 0.0)) {
    s = -s;
    e = -e;
  }
  if (q == 1) {
    acc.add(s);
    acc.add(e);
    return;
  }
  const double ss = s * s, se = 2.0 * s * e, ee = e * e;
  acc.add(ss);
  acc.add(std::fma(s, s, -ss));
  acc.add(se);
  acc.add(std::fma(2.0 * s, e, -se));
  acc.add(ee);
  acc.add(std::fma(e, e, -ee));
}

}  // namespace

double TransportMap1D::operator()(double x) const {
  UnitPoint p = source_.cdf_pair(x);
  if (target_.theta2 == 0.0) return target_.theta1;
  // Levels at 0 or 1 arise only outside the support; keep them finite.
  constexpr double kTiny = 1e-300;
  if (p.u <= 0.0) p = {kTiny, 1.0};
  if (p.uc <= 0.0) p = {1.0, kTiny};
  return target_.quantile(p);
}

TransportMap1D transport_map(const ContinuousDistribution1D& mu, const Generator1D& params) {
  return TransportMap1D(mu, params);
}

double wq_empirical(std::span<const double> x, std::span<const double> y, int q) {
  check_q(q);
  if (x.size() != y.size()) throw_invalid("wq_empirical: length mismatch");
  if (x.empty()) throw_invalid("wq_empirical: empty input");
  ExactSum s;
  for (std::size_t i = 0; i < x.size(); ++i) add_power_exact(s, x[i], y[i], q);
  return root_q(s.value() / static_cast<double>(x.size()), q);
}

std::vector<double> midpoint_normal_scores(std::size_t m) {
  std::vector<double> z(m);
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = (static_cast<double>(i) + 0.5) / dm;
    const double hi = (static_cast<double>(m - i) - 0.5) / dm;
    z[i] = std_normal_quantile(UnitPoint{lo, hi});
  }
  return z;
}

double wq_to_gaussian(std::span<const double> x_sorted, double sigma, int q) {
  return wq_to_gaussian(x_sorted, sigma, q, midpoint_normal_scores(x_sorted.size()));
}

double wq_to_gaussian(std::span<const double> x_sorted, double sigma, int q,
                      std::span<const double> scores) {
  check_q(q);
  if (!(sigma >= 0.0)) throw_invalid("wq_to_gaussian: sigma must be >= 0");
  if (scores.size() != x_sorted.size()) throw_invalid("wq_to_gaussian: score table size mismatch");
  if (x_sorted.empty()) throw_invalid("wq_to_gaussian: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < x_sorted.size(); ++i) s += power_q(x_sorted[i] - sigma * scores[i], q);
  return root_q(s / static_cast<double>(x_sorted.size()), q);
}

double wq_brute(std::span<const double> x, std::span<const double> y, int q) {
  check_q(q);
  if (x.size() != y.size()) throw_invalid("wq_brute: length mismatch");
  if (x.empty()) throw_invalid("wq_brute: empty input");
  if (x.size() > 8) throw_invalid("wq_brute: n must be <= 8");
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  // Plain sums screen the pairings; only near-minimal ones are summed exactly.
  double best_fast = INFINITY;
  do {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) f += power_q(x[i] - y[perm[i]], q);
    if (f <= best_fast * (1.0 + 1e-10)) {
      best_fast = std::min(best_fast, f);
      ExactSum s;
      for (std::size_t i = 0; i < x.size(); ++i) add_power_exact(s, x[i], y[perm[i]], q);
      best = std::min(best, s.value());
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return root_q(best / static_cast<double>(x.size()), q);
}

double unprojected_inner_value(const SampleMatrix& samples, std::span<const double> omega,
                               const LinearGenerator& theta) {
  const std::size_t m = samples.rows(), d = samples.cols();
  if (omega.size() != d || theta.dim() != d) throw_invalid("unprojected_inner_value: dimension mismatch");
  if (m == 0) throw_invalid("unprojected_inner_value: empty sample");
  const double sigma = theta.projected_stddev(omega);
  std::vector<double> proj(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = samples.data.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += row[j] * omega[j];
    proj[i] = s;
  }
  // F_{mu_omega} at each point is its midpoint rank level; ties share the
  // levels of their block in order of appearance.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
  std::vector<std::size_t> rank(m);
  for (std::size_t r = 0; r < m; ++r) rank[order[r]] = r;
  const double dm = static_cast<double>(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = static_cast<double>(rank[i]);
    const UnitPoint level{(r + 0.5) / dm, (dm - r - 0.5) / dm};
    const double t = sigma * std_normal_quantile(level);
    const double e = proj[i] - t;
    acc += e * e;
  }
  return acc / dm;
}

}  // namespace cfwgan
