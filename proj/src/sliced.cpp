// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/sliced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "cfwgan/errors.hpp"
#include "cfwgan/ot1d.hpp"
#include "cfwgan/quadrature.hpp"
#include "cfwgan/rng.hpp"
#include "cfwgan/special.hpp"

namespace cfwgan {

namespace {

void check_spectrum(std::span<const double> s, const char* who) {
  if (s.empty()) throw_invalid(std::string(who) + ": S must be non-empty");
  for (double v : s) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw_domain(std::string(who) + ": S entries must be >= 0");
  }
}

void check_sigma(SigmaTilde st, const char* who) {
  if (!(st.value >= 0.0) || !std::isfinite(st.value)) {
    throw_domain(std::string(who) + ": sigma tilde must be >= 0");
  }
}

LinearGenerator scaled_frame(std::size_t d, std::size_t r, double scale, const Matrix* u,
                             const char* who) {
  if (d == 0) throw_precondition(std::string(who) + ": d must be >= 1");
  if (r < d) throw_precondition(std::string(who) + ": needs r >= d for Theta Theta^T = c I");
  if (u && (u->rows() != d || u->cols() != d)) throw_invalid(std::string(who) + ": U must be d x d");
  Matrix theta(d, r);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) theta(i, j) = scale * (u ? (*u)(i, j) : (i == j ? 1.0 : 0.0));
  }
  return LinearGenerator(std::move(theta), std::vector<double>(d, scale * scale));
}

}  // namespace

LinearGenerator::LinearGenerator(Matrix theta) : theta_(std::move(theta)) {
  if (theta_.rows() == 0 || theta_.cols() == 0) throw_invalid("LinearGenerator: empty matrix");
  s_ = jacobi_eigen(gram(theta_)).values;
  for (double& v : s_) v = std::max(v, 0.0);
}

LinearGenerator::LinearGenerator(Matrix theta, std::vector<double> s)
    : theta_(std::move(theta)), s_(std::move(s)) {
  if (theta_.rows() == 0 || theta_.cols() == 0) throw_invalid("LinearGenerator: empty matrix");
  if (s_.size() != theta_.rows()) throw_invalid("LinearGenerator: spectrum length must equal d");
  std::sort(s_.begin(), s_.end(), std::greater<>());
}

double LinearGenerator::projected_stddev(std::span<const double> omega) const {
  if (omega.size() != dim()) throw_invalid("projected_stddev: dimension mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < rank(); ++k) {
    double v = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) v += theta_(i, k) * omega[i];
    acc += v * v;
  }
  return std::sqrt(acc);
}

SigmaTilde sigma_tilde(const SampleMatrix& samples) {
  if (samples.rows() == 0 || samples.cols() == 0) throw_precondition("sigma_tilde: empty sample");
  double acc = 0.0;
  const double* p = samples.data.data();
  const std::size_t n = samples.rows() * samples.cols();
  for (std::size_t i = 0; i < n; ++i) acc += p[i] * p[i];
  return {std::sqrt(acc / static_cast<double>(n))};
}

double ub_value(std::uint64_t d, SigmaTilde st) {
  check_sigma(st, "ub_value");
  return st.value * std::sqrt(one_minus_gamma_ratio_sq(d));
}

LinearGenerator optimal_theta_w2(std::size_t d, std::size_t r, SigmaTilde st, const Matrix* u) {
  check_sigma(st, "optimal_theta_w2");
  if (d == 0) throw_precondition("optimal_theta_w2: d must be >= 1");
  const double s = gamma_ratio_sq(d) * st.value * st.value;
  return scaled_frame(d, r, std::sqrt(s), u, "optimal_theta_w2");
}

LinearGenerator optimal_theta_w1(std::size_t d, std::size_t r, SigmaTilde st, const Matrix* u) {
  check_sigma(st, "optimal_theta_w1");
  return scaled_frame(d, r, st.value, u, "optimal_theta_w1");
}

LinearGenerator r_pca(const SampleMatrix& samples, std::size_t r) {
  const std::size_t m = samples.rows(), d = samples.cols();
  if (m < 2) throw_precondition("r_pca: need M > 1");
  if (r < 1 || r > d) throw_precondition("r_pca: need 1 <= r <= d");
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = samples.data.row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (double& v : mean) v /= static_cast<double>(m);
  Matrix cov(d, d);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = samples.data.row(i);
    for (std::size_t j = 0; j < d; ++j) c[j] = row[j] - mean[j];
    for (std::size_t a = 0; a < d; ++a) {
      double* ca = cov.row(a);
      for (std::size_t b = a; b < d; ++b) ca[b] += c[a] * c[b];
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      cov(a, b) /= static_cast<double>(m - 1);
      cov(b, a) = cov(a, b);
    }
  }
  const SymmetricEigen eig = jacobi_eigen(cov);
  Matrix theta(d, r);
  std::vector<double> s(d, 0.0);
  for (std::size_t k = 0; k < r; ++k) {
    const double lam = std::max(eig.values[k], 0.0);
    s[k] = lam;
    const double root = std::sqrt(lam);
    for (std::size_t i = 0; i < d; ++i) theta(i, k) = eig.vectors(i, k) * root;
  }
  return LinearGenerator(std::move(theta), std::move(s));
}

McEstimate objective_mc(const LinearGenerator& theta, SigmaTilde st, int q, std::size_t n,
                        std::uint64_t seed) {
  check_sigma(st, "objective_mc");
  if (q != 1 && q != 2) throw_invalid("objective_mc: q must be 1 or 2");
  if (n == 0) throw_precondition("objective_mc: n must be >= 1");
  const std::size_t d = theta.dim();
  RngStream rng(seed, kStreamMonteCarlo);
  std::vector<double> omega(d);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (double& w : omega) w = rng.normal() * inv_sqrt_d;
    const double e = std::abs(st.value - theta.projected_stddev(omega));
    const double v = q == 1 ? e : e * e;
    sum += v;
    sum2 += v * v;
  }
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  const double var = n > 1 ? std::max(0.0, (sum2 - dn * mean * mean) / (dn - 1.0)) : 0.0;
  return {mean, std::sqrt(var / dn)};
}

double objective_quadrature(std::span<const double> s, SigmaTilde st) {
  check_spectrum(s, "objective_quadrature");
  check_sigma(st, "objective_quadrature");
  const double d = static_cast<double>(s.size());
  const double trace = std::accumulate(s.begin(), s.end(), 0.0) / d;
  const double amax = 2.0 * *std::max_element(s.begin(), s.end()) / d;
  if (amax == 0.0 || st.value == 0.0) return trace;
  std::vector<double> a(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) a[i] = 2.0 * s[i] / d;
  // z = kappa w^2, w = v/(1-v).
  const double kappa = 1.0 / amax;
  auto f = [&](double v) {
    const double w = v / (1.0 - v);
    const double z = kappa * w * w;
    double logprod = 0.0, sum = 0.0;
    for (double ai : a) {
      logprod += std::log1p(ai * z);
      sum += ai / (1.0 + ai * z);
    }
    const double om = 1.0 - v;
    return sum * std::exp(-0.5 * logprod) / (om * om);
  };
  const double integral = 2.0 * std::sqrt(kappa) * integrate_adaptive(f, 0.0, 1.0);
  return trace - st.value / std::sqrt(std::numbers::pi) * integral;
}

double objective_carlson(std::span<const double> s, SigmaTilde st) {
  check_spectrum(s, "objective_carlson");
  check_sigma(st, "objective_carlson");
  const std::size_t d = s.size();
  const double trace = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(d);
  const std::vector<double> b(d, 0.5);
  const double r = carlson_r_half(b, s);
  return trace - st.value * std::sqrt(2.0 * static_cast<double>(d)) * gamma_ratio(d) * r;
}

double closed_form_objective_d2(double s11, double s22, SigmaTilde st) {
  if (!(s11 >= 0.0) || !(s22 >= 0.0) || !std::isfinite(s11) || !std::isfinite(s22)) {
    throw_domain("closed_form_objective_d2: S entries must be >= 0");
  }
  check_sigma(st, "closed_form_objective_d2");
  const double g = 1.0 / std::sqrt(std::numbers::pi);  // 1/Gamma(1/2)
  if (s11 == 0.0 && s22 == 0.0) return 0.0;
  if (s22 == 0.0) return 0.5 * s11 - 2.0 * st.value * g * std::sqrt(s11);
  if (s11 == 0.0) return 0.5 * s22 - 2.0 * st.value * g * std::sqrt(s22);
  const double big = std::max(s11, s22);
  if (std::abs(s11 - s22) <= 1e-5 * big) {
    const double s = 0.5 * (s11 + s22);
    return s - st.value * g * std::numbers::pi * std::sqrt(s);
  }
  const double r1 = std::sqrt(s11), r2 = std::sqrt(s22);
  const double m1 = 1.0 - s22 / s11;
  const double m2 = 1.0 - s11 / s22;
  const double bracket = -r1 * s22 / (s11 - s22) * elliptic_k(m1) + r1 * s11 / (s11 - s22) * elliptic_e(m1) -
                         r2 * s11 / (s22 - s11) * elliptic_k(m2) + r2 * s22 / (s22 - s11) * elliptic_e(m2);
  return 0.5 * (s11 + s22) - 2.0 * st.value * g * bracket;
}

std::vector<double> sliced_wq_terms(const SampleMatrix& samples, const LinearGenerator& theta,
                                    const Matrix& directions, int q) {
  if (q != 1 && q != 2) throw_invalid("sliced_wq_terms: q must be 1 or 2");
  const std::size_t m = samples.rows(), d = samples.cols();
  if (directions.cols() != d || theta.dim() != d) throw_invalid("sliced_wq_terms: dimension mismatch");
  const auto scores = midpoint_normal_scores(m);
  std::vector<double> proj(m), out(directions.rows());
  for (std::size_t k = 0; k < directions.rows(); ++k) {
    const double* w = directions.row(k);
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = samples.data.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += row[j] * w[j];
      proj[i] = s;
    }
    std::sort(proj.begin(), proj.end());
    const double sigma = theta.projected_stddev(std::span<const double>(w, d));
    const double v = wq_to_gaussian(proj, sigma, q, scores);
    out[k] = q == 1 ? v : v * v;
  }
  return out;
}

McEstimate jackknife_root_mean(std::span<const double> terms, int q) {
  if (q != 1 && q != 2) throw_invalid("jackknife_root_mean: q must be 1 or 2");
  const std::size_t n = terms.size();
  if (n == 0) throw_invalid("jackknife_root_mean: no terms");
  double sum = 0.0;
  for (double t : terms) sum += t;
  const double dn = static_cast<double>(n);
  auto root = [q](double v) { return q == 1 ? v : std::sqrt(std::max(v, 0.0)); };
  McEstimate est{root(sum / dn), NAN};
  if (n < 2) return est;
  std::vector<double> loo(n);
  double mean_loo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    loo[i] = root((sum - terms[i]) / (dn - 1.0));
    mean_loo += loo[i];
  }
  mean_loo /= dn;
  double ss = 0.0;
  for (double v : loo) ss += (v - mean_loo) * (v - mean_loo);
  est.std_error = std::sqrt((dn - 1.0) / dn * ss);
  return est;
}

std::vector<McEstimate> sliced_wq_empirical(const SampleMatrix& samples,
                                            std::span<const LinearGenerator* const> thetas,
                                            const SlicedEvalConfig& cfg) {
  if (cfg.q != 1 && cfg.q != 2) throw_invalid("sliced_wq_empirical: q must be 1 or 2");
  if (cfg.n_projections == 0) throw_invalid("sliced_wq_empirical: n_projections must be >= 1");
  const std::size_t m = samples.rows(), d = samples.cols();
  if (m == 0 || d == 0) throw_precondition("sliced_wq_empirical: empty sample");
  for (const LinearGenerator* t : thetas) {
    if (!t || t->dim() != d) throw_invalid("sliced_wq_empirical: generator dimension mismatch");
  }
  const std::size_t n = cfg.n_projections, g = thetas.size();
  const auto scores = midpoint_normal_scores(m);
  std::vector<double> terms(g * n);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> omega(d), proj(m);
    for (std::size_t k = begin; k < end; ++k) {
      RngStream rng(cfg.seed, kStreamProjection + k);
      sample_sphere_direction(d, rng, omega.data());
      for (std::size_t i = 0; i < m; ++i) {
        const double* row = samples.data.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += row[j] * omega[j];
        proj[i] = s;
      }
      std::sort(proj.begin(), proj.end());
      for (std::size_t t = 0; t < g; ++t) {
        const double sigma = thetas[t]->projected_stddev(omega);
        const double v = wq_to_gaussian(proj, sigma, cfg.q, scores);
        terms[t * n + k] = cfg.q == 1 ? v : v * v;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = n * t / threads, end = n * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<McEstimate> out;
  out.reserve(g);
  for (std::size_t t = 0; t < g; ++t) {
    out.push_back(jackknife_root_mean(std::span<const double>(terms.data() + t * n, n), cfg.q));
  }
  return out;
}

McEstimate sliced_wq_empirical(const SampleMatrix& samples, const LinearGenerator& theta,
                               const SlicedEvalConfig& cfg) {
  const LinearGenerator* one[] = {&theta};
  return sliced_wq_empirical(samples, one, cfg).front();
}

}  // namespace cfwgan
