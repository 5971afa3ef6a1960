// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/cfwgan.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "cfwgan/distributions.hpp"
#include "cfwgan/errors.hpp"
#include "cfwgan/kde.hpp"
#include "cfwgan/ot1d.hpp"
#include "cfwgan/rng.hpp"
#include "cfwgan/sample_matrix.hpp"
#include "cfwgan/sgd.hpp"
#include "cfwgan/sliced.hpp"
#include "cfwgan/special.hpp"
#include "cfwgan/wgan1d.hpp"

struct cfw_distribution {
  cfwgan::ContinuousDistribution1D value;
};
struct cfw_kde {
  cfwgan::KdeModel value;
};
struct cfw_sample_matrix {
  cfwgan::SampleMatrix value;
};
struct cfw_linear_generator {
  cfwgan::LinearGenerator value;
};
struct cfw_sgd_trace {
  cfwgan::SgdTrace value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
cfw_status guard(F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return CFW_OK;
  } catch (const cfwgan::InvalidArgument& e) {
    g_last_error = e.what();
    return CFW_ERR_INVALID_ARGUMENT;
  } catch (const cfwgan::DomainError& e) {
    g_last_error = e.what();
    return CFW_ERR_DOMAIN;
  } catch (const cfwgan::PreconditionError& e) {
    g_last_error = e.what();
    return CFW_ERR_PRECONDITION;
  } catch (const cfwgan::NumericError& e) {
    g_last_error = e.what();
    return CFW_ERR_NUMERIC;
  } catch (const cfwgan::IoError& e) {
    g_last_error = e.what();
    return CFW_ERR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CFW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CFW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CFW_ERR_INTERNAL;
  }
}

template <class T>
void need(const T* p, const char* name) {
  if (!p) cfwgan::throw_invalid(std::string(name) + " must not be NULL");
}

// Handle outputs read NULL unless the call succeeds.
template <class T>
void need_out(T** out) {
  need(out, "out");
  *out = nullptr;
}

cfwgan::ActivationKind to_cpp(cfw_activation a) {
  switch (a) {
    case CFW_ACT_LINEAR: return cfwgan::ActivationKind::Linear;
    case CFW_ACT_SIGMOID: return cfwgan::ActivationKind::Sigmoid;
    case CFW_ACT_RELU: return cfwgan::ActivationKind::ReLU;
  }
  cfwgan::throw_invalid("unknown activation");
}

cfwgan::BandwidthRule to_cpp(cfw_bandwidth_rule r) {
  switch (r) {
    case CFW_BW_SILVERMAN: return cfwgan::BandwidthRule::Silverman;
    case CFW_BW_PLUGIN: return cfwgan::BandwidthRule::Plugin;
  }
  cfwgan::throw_invalid("unknown bandwidth rule");
}

void fill(const cfwgan::SolveReport& r, cfw_solve_report* out) {
  out->theta1 = r.params.theta1;
  out->theta2 = r.params.theta2;
  out->branch = r.branch == cfwgan::Branch::NonNegativeTheta2 ? CFW_BRANCH_NONNEGATIVE
                                                             : CFW_BRANCH_NONPOSITIVE;
  out->objective = r.objective_value;
  out->condition = r.condition_value;
}

std::span<const double> view(const double* x, std::size_t n) {
  if (n > 0) need(x, "x");
  return {x, n};
}

cfwgan::Matrix matrix_from_rows(const double* data, std::size_t rows, std::size_t cols) {
  need(data, "data");
  if (rows == 0 || cols == 0) cfwgan::throw_invalid("matrix must be non-empty");
  cfwgan::Matrix m(rows, cols);
  std::copy(data, data + rows * cols, m.data());
  return m;
}

}  // namespace

extern "C" {

const char* cfw_version(void) { return cfwgan::version(); }
const char* cfw_last_error(void) { return g_last_error.c_str(); }

const char* cfw_status_name(cfw_status status) {
  switch (status) {
    case CFW_OK: return "ok";
    case CFW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CFW_ERR_DOMAIN: return "domain error";
    case CFW_ERR_PRECONDITION: return "precondition failed";
    case CFW_ERR_NUMERIC: return "numeric failure";
    case CFW_ERR_IO: return "i/o error";
    case CFW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cfw_status cfw_activation_parse(const char* name, cfw_activation* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<cfw_activation>(cfwgan::parse_activation(name));
  });
}

const char* cfw_activation_name(cfw_activation act) {
  switch (act) {
    case CFW_ACT_LINEAR:
    case CFW_ACT_SIGMOID:
    case CFW_ACT_RELU: return cfwgan::to_string(to_cpp(act));
  }
  return "unknown";
}

cfw_status cfw_bandwidth_rule_parse(const char* name, cfw_bandwidth_rule* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = cfwgan::parse_bandwidth_rule(name) == cfwgan::BandwidthRule::Plugin ? CFW_BW_PLUGIN
                                                                              : CFW_BW_SILVERMAN;
  });
}

const char* cfw_bandwidth_rule_name(cfw_bandwidth_rule rule) {
  switch (rule) {
    case CFW_BW_SILVERMAN:
    case CFW_BW_PLUGIN: return cfwgan::to_string(to_cpp(rule));
  }
  return "unknown";
}

const char* cfw_branch_name(cfw_branch branch) {
  return cfwgan::to_string(branch == CFW_BRANCH_NONPOSITIVE ? cfwgan::Branch::NonPositiveTheta2
                                                            : cfwgan::Branch::NonNegativeTheta2);
}

cfw_status cfw_distribution_parse(const char* spec, cfw_distribution** out) {
  return guard([&] {
    need(spec, "spec");
    need_out(out);
    *out = new cfw_distribution{cfwgan::ContinuousDistribution1D::parse(spec)};
  });
}

cfw_status cfw_distribution_empirical(const double* x, size_t n, cfw_distribution** out) {
  return guard([&] {
    need_out(out);
    const auto s = view(x, n);
    *out = new cfw_distribution{
        cfwgan::ContinuousDistribution1D::empirical(std::vector<double>(s.begin(), s.end()))};
  });
}

void cfw_distribution_free(cfw_distribution* dist) { delete dist; }

cfw_status cfw_distribution_describe(const cfw_distribution* dist, char* buf, size_t cap,
                                     size_t* needed) {
  return guard([&] {
    need(dist, "dist");
    const std::string s = dist->value.describe();
    if (needed) *needed = s.size();
    if (buf && cap > 0) {
      const std::size_t k = std::min(cap - 1, s.size());
      std::memcpy(buf, s.data(), k);
      buf[k] = '\0';
    }
  });
}

cfw_status cfw_distribution_cdf(const cfw_distribution* dist, double x, double* out) {
  return guard([&] {
    need(dist, "dist");
    need(out, "out");
    *out = dist->value.cdf(x);
  });
}

cfw_status cfw_distribution_quantile(const cfw_distribution* dist, double p, double* out) {
  return guard([&] {
    need(dist, "dist");
    need(out, "out");
    *out = dist->value.quantile(p);
  });
}

cfw_status cfw_distribution_moments(const cfw_distribution* dist, double* mean, double* variance) {
  return guard([&] {
    need(dist, "dist");
    const auto m = dist->value.moments();
    if (mean) *mean = m.mean;
    if (variance) *variance = m.variance;
  });
}

cfw_status cfw_distribution_sample(const cfw_distribution* dist, uint64_t seed, uint64_t stream,
                                   size_t n, double* out) {
  return guard([&] {
    need(dist, "dist");
    if (n > 0) need(out, "out");
    cfwgan::RngStream rng(seed, stream);
    for (std::size_t i = 0; i < n; ++i) out[i] = dist->value.sample(rng);
  });
}

cfw_status cfw_solve_w2(const cfw_distribution* dist, cfw_activation act, cfw_solve_report* out) {
  return guard([&] {
    need(dist, "dist");
    need(out, "out");
    fill(cfwgan::solve_w2(dist->value, to_cpp(act)), out);
  });
}

cfw_status cfw_objective_w2(const cfw_distribution* dist, cfw_activation act, double theta1,
                            double theta2, double* out) {
  return guard([&] {
    need(dist, "dist");
    need(out, "out");
    *out = cfwgan::objective_w2(dist->value, {theta1, theta2, to_cpp(act)});
  });
}

cfw_status cfw_w1_residuals(const cfw_distribution* dist, cfw_activation act, double theta1,
                            double theta2, double* r1, double* r2) {
  return guard([&] {
    need(dist, "dist");
    const auto r = cfwgan::w1_residuals(dist->value, {theta1, theta2, to_cpp(act)});
    if (r1) *r1 = r.r1;
    if (r2) *r2 = r.r2;
  });
}

cfw_status cfw_kde_fit(const double* x, size_t n, double bandwidth, cfw_bandwidth_rule rule,
                       cfw_kde** out) {
  return guard([&] {
    need_out(out);
    const auto s = view(x, n);
    *out = new cfw_kde{bandwidth > 0.0 ? cfwgan::KdeModel::fit(s, bandwidth)
                                       : cfwgan::KdeModel::fit(s, to_cpp(rule))};
  });
}

void cfw_kde_free(cfw_kde* kde) { delete kde; }

cfw_status cfw_kde_bandwidth(const cfw_kde* kde, double* out) {
  return guard([&] {
    need(kde, "kde");
    need(out, "out");
    *out = kde->value.bandwidth();
  });
}

cfw_status cfw_kde_cdf(const cfw_kde* kde, double x, double* out) {
  return guard([&] {
    need(kde, "kde");
    need(out, "out");
    *out = kde->value.cdf_hat(x);
  });
}

cfw_status cfw_kde_quantile(const cfw_kde* kde, double p, double* out) {
  return guard([&] {
    need(kde, "kde");
    need(out, "out");
    *out = kde->value.quantile_hat(p);
  });
}

cfw_status cfw_kde_pdf(const cfw_kde* kde, double x, double* out) {
  return guard([&] {
    need(kde, "kde");
    need(out, "out");
    *out = kde->value.pdf_hat(x);
  });
}

cfw_status cfw_solve_w2_empirical(const double* x, size_t n, const cfw_kde* kde, cfw_activation act,
                                  cfw_solve_report* out) {
  return guard([&] {
    need(kde, "kde");
    need(out, "out");
    fill(cfwgan::solve_w2_empirical(view(x, n), kde->value, to_cpp(act)), out);
  });
}

cfw_status cfw_w1_residuals_empirical(const double* x, size_t n, const cfw_kde* kde,
                                      cfw_activation act, double theta1, double theta2, double* r1,
                                      double* r2) {
  return guard([&] {
    need(kde, "kde");
    const auto r = cfwgan::w1_residuals(view(x, n), kde->value, {theta1, theta2, to_cpp(act)});
    if (r1) *r1 = r.r1;
    if (r2) *r2 = r.r2;
  });
}

cfw_status cfw_wq_empirical(const double* x, size_t nx, const double* y, size_t ny, int q,
                            double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::wq_empirical(view(x, nx), view(y, ny), q);
  });
}

cfw_status cfw_wq_to_gaussian(const double* x_sorted, size_t n, double sigma, int q, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::wq_to_gaussian(view(x_sorted, n), sigma, q);
  });
}

cfw_status cfw_sample_matrix_synthetic(const char* spec, size_t d, size_t m, uint64_t seed,
                                       cfw_sample_matrix** out) {
  return guard([&] {
    need(spec, "spec");
    need_out(out);
    *out = new cfw_sample_matrix{
        cfwgan::sample_matrix(cfwgan::SyntheticSpec::parse(spec), d, m, seed)};
  });
}

cfw_status cfw_sample_matrix_from_rows(const double* data, size_t rows, size_t cols,
                                       cfw_sample_matrix** out) {
  return guard([&] {
    need_out(out);
    *out = new cfw_sample_matrix{{matrix_from_rows(data, rows, cols), "memory"}};
  });
}

cfw_status cfw_sample_matrix_read_csv(const char* path, cfw_sample_matrix** out) {
  return guard([&] {
    need(path, "path");
    need_out(out);
    *out = new cfw_sample_matrix{cfwgan::read_csv(path)};
  });
}

cfw_status cfw_sample_matrix_write_csv(const cfw_sample_matrix* mat, const char* path) {
  return guard([&] {
    need(mat, "mat");
    need(path, "path");
    cfwgan::write_csv(mat->value, path);
  });
}

void cfw_sample_matrix_free(cfw_sample_matrix* mat) { delete mat; }

cfw_status cfw_sample_matrix_shape(const cfw_sample_matrix* mat, size_t* rows, size_t* cols) {
  return guard([&] {
    need(mat, "mat");
    if (rows) *rows = mat->value.rows();
    if (cols) *cols = mat->value.cols();
  });
}

const double* cfw_sample_matrix_data(const cfw_sample_matrix* mat) {
  return mat ? mat->value.data.data() : nullptr;
}

cfw_status cfw_sample_matrix_column(const cfw_sample_matrix* mat, size_t j, double* out) {
  return guard([&] {
    need(mat, "mat");
    need(out, "out");
    if (j >= mat->value.cols()) cfwgan::throw_invalid("column index out of range");
    const auto c = mat->value.column(j);
    std::copy(c.begin(), c.end(), out);
  });
}

cfw_status cfw_sample_matrix_center(cfw_sample_matrix* mat) {
  return guard([&] {
    need(mat, "mat");
    cfwgan::center_columns(mat->value);
  });
}

cfw_status cfw_sigma_tilde(const cfw_sample_matrix* mat, double* out) {
  return guard([&] {
    need(mat, "mat");
    need(out, "out");
    *out = cfwgan::sigma_tilde(mat->value).value;
  });
}

cfw_status cfw_linear_generator_from_rows(const double* theta, size_t d, size_t r,
                                          cfw_linear_generator** out) {
  return guard([&] {
    need_out(out);
    *out = new cfw_linear_generator{cfwgan::LinearGenerator(matrix_from_rows(theta, d, r))};
  });
}

cfw_status cfw_optimal_theta_w2(size_t d, size_t r, double sigma_tilde, cfw_linear_generator** out) {
  return guard([&] {
    need_out(out);
    *out = new cfw_linear_generator{cfwgan::optimal_theta_w2(d, r, {sigma_tilde})};
  });
}

cfw_status cfw_optimal_theta_w1(size_t d, size_t r, double sigma_tilde, cfw_linear_generator** out) {
  return guard([&] {
    need_out(out);
    *out = new cfw_linear_generator{cfwgan::optimal_theta_w1(d, r, {sigma_tilde})};
  });
}

cfw_status cfw_r_pca(const cfw_sample_matrix* mat, size_t r, cfw_linear_generator** out) {
  return guard([&] {
    need(mat, "mat");
    need_out(out);
    *out = new cfw_linear_generator{cfwgan::r_pca(mat->value, r)};
  });
}

void cfw_linear_generator_free(cfw_linear_generator* gen) { delete gen; }

cfw_status cfw_linear_generator_shape(const cfw_linear_generator* gen, size_t* d, size_t* r) {
  return guard([&] {
    need(gen, "gen");
    if (d) *d = gen->value.dim();
    if (r) *r = gen->value.rank();
  });
}

cfw_status cfw_linear_generator_spectrum(const cfw_linear_generator* gen, double* out) {
  return guard([&] {
    need(gen, "gen");
    need(out, "out");
    std::copy(gen->value.s().begin(), gen->value.s().end(), out);
  });
}

cfw_sliced_config cfw_sliced_config_default(void) {
  const cfwgan::SlicedEvalConfig c;
  return {c.n_projections, c.q, c.seed, c.threads};
}

cfw_status cfw_sliced_wq(const cfw_sample_matrix* mat, const cfw_linear_generator* const* gens,
                         size_t n_gens, const cfw_sliced_config* cfg, double* values,
                         double* std_errors) {
  return guard([&] {
    need(mat, "mat");
    need(cfg, "cfg");
    if (n_gens == 0) return;
    need(gens, "gens");
    need(values, "values");
    std::vector<const cfwgan::LinearGenerator*> ptrs(n_gens);
    for (std::size_t i = 0; i < n_gens; ++i) {
      need(gens[i], "gens[i]");
      ptrs[i] = &gens[i]->value;
    }
    const cfwgan::SlicedEvalConfig c{cfg->n_projections, cfg->q, cfg->seed, cfg->threads};
    const auto est = cfwgan::sliced_wq_empirical(mat->value, ptrs, c);
    for (std::size_t i = 0; i < n_gens; ++i) {
      values[i] = est[i].value;
      if (std_errors) std_errors[i] = est[i].std_error;
    }
  });
}

cfw_status cfw_objective_mc(const cfw_linear_generator* gen, double sigma_tilde, int q, size_t n,
                            uint64_t seed, double* value, double* std_error) {
  return guard([&] {
    need(gen, "gen");
    need(value, "value");
    const auto e = cfwgan::objective_mc(gen->value, {sigma_tilde}, q, n, seed);
    *value = e.value;
    if (std_error) *std_error = e.std_error;
  });
}

cfw_status cfw_objective_quadrature(const double* s, size_t d, double sigma_tilde, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::objective_quadrature(view(s, d), {sigma_tilde});
  });
}

cfw_status cfw_objective_carlson(const double* s, size_t d, double sigma_tilde, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::objective_carlson(view(s, d), {sigma_tilde});
  });
}

cfw_status cfw_closed_form_objective_d2(double s11, double s22, double sigma_tilde, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::closed_form_objective_d2(s11, s22, {sigma_tilde});
  });
}

cfw_status cfw_gamma_ratio_sq(uint64_t d, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::gamma_ratio_sq(d);
  });
}

cfw_status cfw_ub_value(uint64_t d, double sigma_tilde, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::ub_value(d, {sigma_tilde});
  });
}

cfw_status cfw_elliptic_k(double m, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::elliptic_k(m);
  });
}

cfw_status cfw_elliptic_e(double m, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::elliptic_e(m);
  });
}

cfw_status cfw_carlson_r_half(const double* b, const double* z, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    *out = cfwgan::carlson_r_half(view(b, n), view(z, n));
  });
}

cfw_sgd_config cfw_sgd_config_default(void) {
  const cfwgan::SgdConfig c;
  return {c.learning_rate, c.momentum,    c.batch_size,     c.iterations,       c.seed,
          c.theta1_init,   c.theta2_init, CFW_ACT_LINEAR, CFW_BW_SILVERMAN, 0.0};
}

cfw_status cfw_fit_w1(const double* x, size_t n, const cfw_sgd_config* cfg, double* theta1,
                      double* theta2, cfw_sgd_trace** trace) {
  return guard([&] {
    need(cfg, "cfg");
    if (trace) *trace = nullptr;
    cfwgan::SgdConfig c;
    c.learning_rate = cfg->learning_rate;
    c.momentum = cfg->momentum;
    c.batch_size = cfg->batch_size;
    c.iterations = cfg->iterations;
    c.seed = cfg->seed;
    c.theta1_init = cfg->theta1_init;
    c.theta2_init = cfg->theta2_init;
    c.activation = to_cpp(cfg->activation);
    c.bandwidth_rule = to_cpp(cfg->bandwidth_rule);
    if (cfg->bandwidth > 0.0) c.bandwidth = cfg->bandwidth;
    auto result = cfwgan::fit_w1(view(x, n), c);
    if (theta1) *theta1 = result.params.theta1;
    if (theta2) *theta2 = result.params.theta2;
    if (trace) *trace = new cfw_sgd_trace{std::move(result.trace)};
  });
}

void cfw_sgd_trace_free(cfw_sgd_trace* trace) { delete trace; }

size_t cfw_sgd_trace_length(const cfw_sgd_trace* trace) {
  return trace ? trace->value.steps.size() : 0;
}

cfw_status cfw_sgd_trace_step(const cfw_sgd_trace* trace, size_t i, double* theta1, double* theta2,
                              double* residual_norm) {
  return guard([&] {
    need(trace, "trace");
    if (i >= trace->value.steps.size()) cfwgan::throw_invalid("trace index out of range");
    const auto& s = trace->value.steps[i];
    if (theta1) *theta1 = s.theta1;
    if (theta2) *theta2 = s.theta2;
    if (residual_norm) *residual_norm = s.residual_norm;
  });
}

}  // extern "C"
