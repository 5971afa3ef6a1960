// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "cfwgan/cfwgan.h"

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> draw(const char* spec, std::size_t n, std::uint64_t seed) {
  cfw_distribution* d = nullptr;
  REQUIRE(cfw_distribution_parse(spec, &d) == CFW_OK);
  std::vector<double> x(n);
  REQUIRE(cfw_distribution_sample(d, seed, 0, n, x.data()) == CFW_OK);
  cfw_distribution_free(d);
  return x;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(cfw_version()) > 0);
  CHECK(std::string(cfw_status_name(CFW_OK)) == "ok");
  CHECK(std::string(cfw_status_name(CFW_ERR_PRECONDITION)) == "precondition failed");
  CHECK(std::string(cfw_activation_name(CFW_ACT_RELU)) == "relu");
  CHECK(std::string(cfw_bandwidth_rule_name(CFW_BW_PLUGIN)) == "plugin");
  cfw_activation act;
  CHECK(cfw_activation_parse("Sigmoid", &act) == CFW_OK);
  CHECK(act == CFW_ACT_SIGMOID);
  CHECK(cfw_activation_parse("tanh", &act) == CFW_ERR_INVALID_ARGUMENT);
  CHECK(std::string(cfw_last_error()).find("tanh") != std::string::npos);
}

TEST_CASE("null handles and outputs are rejected") {
  double v = 0.0;
  CHECK(cfw_distribution_cdf(nullptr, 0.0, &v) == CFW_ERR_INVALID_ARGUMENT);
  CHECK(cfw_distribution_parse(nullptr, nullptr) == CFW_ERR_INVALID_ARGUMENT);
  CHECK(cfw_kde_cdf(nullptr, 0.0, &v) == CFW_ERR_INVALID_ARGUMENT);
  CHECK(cfw_gamma_ratio_sq(2, nullptr) == CFW_ERR_INVALID_ARGUMENT);
  CHECK(cfw_sample_matrix_data(nullptr) == nullptr);
  cfw_distribution_free(nullptr);
  cfw_kde_free(nullptr);
  cfw_sample_matrix_free(nullptr);
  cfw_linear_generator_free(nullptr);
  cfw_sgd_trace_free(nullptr);
  CHECK(cfw_sgd_trace_length(nullptr) == 0);
}

TEST_CASE("distribution handle") {
  cfw_distribution* d = nullptr;
  REQUIRE(cfw_distribution_parse("laplace:0,0.7071067811865476", &d) == CFW_OK);
  char buf[8];
  std::size_t needed = 0;
  CHECK(cfw_distribution_describe(d, buf, sizeof buf, &needed) == CFW_OK);
  CHECK(needed > sizeof buf);
  CHECK(std::strlen(buf) == sizeof buf - 1);
  double mean = 0, var = 0;
  CHECK(cfw_distribution_moments(d, &mean, &var) == CFW_OK);
  CHECK(std::abs(var - 1.0) < 1e-15);
  double q = 0;
  CHECK(cfw_distribution_quantile(d, 1.5, &q) == CFW_ERR_DOMAIN);
  CHECK(std::string(cfw_last_error()).size() > 0);
  cfw_solve_report rep;
  CHECK(cfw_solve_w2(d, CFW_ACT_LINEAR, &rep) == CFW_OK);
  CHECK(std::abs(rep.theta2 - 0.98134408163) < 1e-10);
  CHECK(rep.branch == CFW_BRANCH_NONNEGATIVE);
  double obj = 0;
  CHECK(cfw_objective_w2(d, CFW_ACT_LINEAR, rep.theta1, rep.theta2, &obj) == CFW_OK);
  CHECK(std::abs(obj - rep.objective) < 1e-7);
  double r1, r2;
  CHECK(cfw_w1_residuals(d, CFW_ACT_LINEAR, 0.0, -1.0, &r1, &r2) == CFW_ERR_PRECONDITION);
  cfw_distribution_free(d);

  CHECK(cfw_distribution_parse("cauchy:0,1", &d) == CFW_ERR_INVALID_ARGUMENT);
  CHECK(d == nullptr);
  const double xs[] = {1.0, 2.0, 3.0};
  REQUIRE(cfw_distribution_empirical(xs, 3, &d) == CFW_OK);
  CHECK(cfw_solve_w2(d, CFW_ACT_LINEAR, &rep) == CFW_ERR_PRECONDITION);
  cfw_distribution_free(d);
}

TEST_CASE("ReLU solve through the C interface") {
  cfw_distribution* d = nullptr;
  REQUIRE(cfw_distribution_parse("gaussian:0,1", &d) == CFW_OK);
  cfw_solve_report rep;
  REQUIRE(cfw_solve_w2(d, CFW_ACT_RELU, &rep) == CFW_OK);
  CHECK(std::abs(rep.theta2 - kPi / (kPi - 1)) < 1e-10);
  cfw_distribution_free(d);
}

TEST_CASE("kde handle") {
  const double one[] = {0.0};
  cfw_kde* k = nullptr;
  REQUIRE(cfw_kde_fit(one, 1, 1.0, CFW_BW_SILVERMAN, &k) == CFW_OK);
  double v = 0;
  CHECK(cfw_kde_cdf(k, 0.5, &v) == CFW_OK);
  CHECK(v == 0.84375);
  CHECK(cfw_kde_pdf(k, 0.0, &v) == CFW_OK);
  CHECK(v == 0.75);
  CHECK(cfw_kde_quantile(k, 0.0, &v) == CFW_ERR_DOMAIN);
  cfw_kde_free(k);
  CHECK(cfw_kde_fit(one, 1, 0.0, CFW_BW_SILVERMAN, &k) == CFW_ERR_PRECONDITION);

  const auto x = draw("gaussian:0,1", 20000, 3);
  REQUIRE(cfw_kde_fit(x.data(), x.size(), 0.0, CFW_BW_PLUGIN, &k) == CFW_OK);
  CHECK(cfw_kde_bandwidth(k, &v) == CFW_OK);
  CHECK(v > 0.0);
  cfw_solve_report rep;
  CHECK(cfw_solve_w2_empirical(x.data(), x.size(), k, CFW_ACT_LINEAR, &rep) == CFW_OK);
  CHECK(std::abs(rep.theta2 - 1.0) < 0.02);
  double r1, r2;
  CHECK(cfw_w1_residuals_empirical(x.data(), x.size(), k, CFW_ACT_LINEAR, 10.0, 1.0, &r1, &r2) == CFW_OK);
  CHECK(r1 == 1.0);
  cfw_kde_free(k);
}

TEST_CASE("transport helpers") {
  const double x[] = {0.0, 2.0}, y[] = {1.0, 1.0};
  double v = 0;
  CHECK(cfw_wq_empirical(x, 2, y, 2, 1, &v) == CFW_OK);
  CHECK(v == 1.0);
  CHECK(cfw_wq_empirical(x, 2, y, 1, 1, &v) == CFW_ERR_INVALID_ARGUMENT);
  CHECK(cfw_wq_to_gaussian(x, 2, 0.0, 2, &v) == CFW_OK);
  CHECK(std::abs(v - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("sample matrices and generators") {
  cfw_sample_matrix* m = nullptr;
  REQUIRE(cfw_sample_matrix_synthetic("iid:laplace:0,0.7071067811865476", 6, 2000, 5, &m) == CFW_OK);
  std::size_t rows = 0, cols = 0;
  CHECK(cfw_sample_matrix_shape(m, &rows, &cols) == CFW_OK);
  CHECK(rows == 2000);
  CHECK(cols == 6);
  CHECK(cfw_sample_matrix_center(m) == CFW_OK);
  std::vector<double> col(rows);
  CHECK(cfw_sample_matrix_column(m, 2, col.data()) == CFW_OK);
  CHECK(col[7] == cfw_sample_matrix_data(m)[7 * 6 + 2]);
  CHECK(cfw_sample_matrix_column(m, 6, col.data()) == CFW_ERR_INVALID_ARGUMENT);
  double st = 0;
  CHECK(cfw_sigma_tilde(m, &st) == CFW_OK);

  cfw_linear_generator* opt = nullptr;
  cfw_linear_generator* pca = nullptr;
  REQUIRE(cfw_optimal_theta_w2(6, 6, st, &opt) == CFW_OK);
  REQUIRE(cfw_r_pca(m, 4, &pca) == CFW_OK);
  cfw_linear_generator* bad = nullptr;
  CHECK(cfw_optimal_theta_w2(6, 5, st, &bad) == CFW_ERR_PRECONDITION);
  CHECK(bad == nullptr);
  std::size_t d = 0, r = 0;
  CHECK(cfw_linear_generator_shape(pca, &d, &r) == CFW_OK);
  CHECK(d == 6);
  CHECK(r == 4);
  std::vector<double> spec(6);
  CHECK(cfw_linear_generator_spectrum(pca, spec.data()) == CFW_OK);
  CHECK(spec[4] == 0.0);

  cfw_sliced_config cfg = cfw_sliced_config_default();
  CHECK(cfg.n_projections == 20000);
  cfg.n_projections = 200;
  cfg.seed = 1;
  const cfw_linear_generator* gens[] = {opt, pca};
  double values[2], ses[2];
  CHECK(cfw_sliced_wq(m, gens, 2, &cfg, values, ses) == CFW_OK);
  CHECK(values[0] < values[1]);
  CHECK(ses[0] > 0.0);
  cfg.q = 5;
  CHECK(cfw_sliced_wq(m, gens, 2, &cfg, values, ses) == CFW_ERR_INVALID_ARGUMENT);

  double mc = 0, se = 0;
  CHECK(cfw_objective_mc(opt, st, 2, 1000, 3, &mc, &se) == CFW_OK);
  CHECK(mc > 0.0);

  const char* path = "capi_roundtrip.csv";
  CHECK(cfw_sample_matrix_write_csv(m, path) == CFW_OK);
  cfw_sample_matrix* back = nullptr;
  REQUIRE(cfw_sample_matrix_read_csv(path, &back) == CFW_OK);
  CHECK(std::memcmp(cfw_sample_matrix_data(back), cfw_sample_matrix_data(m), rows * cols * sizeof(double)) == 0);
  std::remove(path);
  cfw_sample_matrix_free(back);
  CHECK(cfw_sample_matrix_read_csv("/nonexistent/dir/x.csv", &back) == CFW_ERR_IO);
  CHECK(back == nullptr);

  const double rows2[] = {1.0, 0.0, 0.0, 1.0};
  cfw_linear_generator* id = nullptr;
  REQUIRE(cfw_linear_generator_from_rows(rows2, 2, 2, &id) == CFW_OK);
  cfw_linear_generator_free(id);
  cfw_linear_generator_free(opt);
  cfw_linear_generator_free(pca);
  cfw_sample_matrix_free(m);
}

TEST_CASE("special functions and objectives") {
  double v = 0;
  CHECK(cfw_gamma_ratio_sq(2, &v) == CFW_OK);
  CHECK(std::abs(v - kPi / 4) < 1e-15);
  CHECK(cfw_ub_value(2, 1.0, &v) == CFW_OK);
  CHECK(std::abs(v - std::sqrt(1 - kPi / 4)) < 1e-15);
  CHECK(cfw_elliptic_k(0.0, &v) == CFW_OK);
  CHECK(std::abs(v - kPi / 2) < 1e-15);
  CHECK(cfw_elliptic_k(1.0, &v) == CFW_ERR_DOMAIN);
  CHECK(cfw_elliptic_e(1.0, &v) == CFW_OK);
  CHECK(std::abs(v - 1.0) < 1e-15);
  const double b[] = {0.5, 0.5, 0.5}, z[] = {4.0, 4.0, 4.0};
  CHECK(cfw_carlson_r_half(b, z, 3, &v) == CFW_OK);
  CHECK(std::abs(v - 2.0) < 1e-8);
  const double s[] = {kPi / 4, kPi / 4};
  double q = 0, c = 0, e = 0;
  CHECK(cfw_objective_quadrature(s, 2, 1.0, &q) == CFW_OK);
  CHECK(cfw_objective_carlson(s, 2, 1.0, &c) == CFW_OK);
  CHECK(cfw_closed_form_objective_d2(s[0], s[1], 1.0, &e) == CFW_OK);
  CHECK(std::abs(q + kPi / 4) < 1e-8);
  CHECK(std::abs(c - q) < 1e-8);
  CHECK(std::abs(e - q) < 1e-8);
}

TEST_CASE("SGD through the C interface") {
  const auto x = draw("gaussian:1.5,2", 20000, 7);
  cfw_sgd_config cfg = cfw_sgd_config_default();
  CHECK(cfg.learning_rate == 0.01);
  CHECK(cfg.iterations == 5000);
  cfg.iterations = 500;
  cfg.seed = 2;
  double t1 = 0, t2 = 0;
  cfw_sgd_trace* trace = nullptr;
  REQUIRE(cfw_fit_w1(x.data(), x.size(), &cfg, &t1, &t2, &trace) == CFW_OK);
  CHECK(cfw_sgd_trace_length(trace) == 501);
  double a, b, rn;
  CHECK(cfw_sgd_trace_step(trace, 500, &a, &b, &rn) == CFW_OK);
  CHECK(a == t1);
  CHECK(b == t2);
  CHECK(cfw_sgd_trace_step(trace, 501, &a, &b, &rn) == CFW_ERR_INVALID_ARGUMENT);
  cfw_sgd_trace_free(trace);
  double u1 = 0, u2 = 0;
  CHECK(cfw_fit_w1(x.data(), x.size(), &cfg, &u1, &u2, nullptr) == CFW_OK);
  CHECK(u1 == t1);
  CHECK(u2 == t2);
  CHECK(cfw_fit_w1(x.data(), 50, &cfg, &u1, &u2, nullptr) == CFW_ERR_PRECONDITION);
}
