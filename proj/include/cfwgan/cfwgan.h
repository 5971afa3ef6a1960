/* Copyright 2026 The cfwgan Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libcfwgan. Every fallible call returns a cfw_status; on
 * failure cfw_last_error() describes the problem for the calling thread.
 * Objects are opaque handles released with the matching *_free function,
 * which accepts NULL.
 */
#ifndef CFWGAN_CFWGAN_H_
#define CFWGAN_CFWGAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CFW_BUILDING_LIBRARY)
#define CFW_API __attribute__((visibility("default")))
#else
#define CFW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cfw_status {
  CFW_OK = 0,
  CFW_ERR_INVALID_ARGUMENT = 1,
  CFW_ERR_DOMAIN = 2,
  CFW_ERR_PRECONDITION = 3,
  CFW_ERR_NUMERIC = 4,
  CFW_ERR_IO = 5,
  CFW_ERR_INTERNAL = 6
} cfw_status;

CFW_API const char* cfw_version(void);
/* Message of the last failed call on this thread, "" if none. */
CFW_API const char* cfw_last_error(void);
CFW_API const char* cfw_status_name(cfw_status status);

typedef enum cfw_activation { CFW_ACT_LINEAR = 0, CFW_ACT_SIGMOID = 1, CFW_ACT_RELU = 2 } cfw_activation;
typedef enum cfw_bandwidth_rule { CFW_BW_SILVERMAN = 0, CFW_BW_PLUGIN = 1 } cfw_bandwidth_rule;
typedef enum cfw_branch { CFW_BRANCH_NONNEGATIVE = 0, CFW_BRANCH_NONPOSITIVE = 1 } cfw_branch;

CFW_API cfw_status cfw_activation_parse(const char* name, cfw_activation* out);
CFW_API const char* cfw_activation_name(cfw_activation act);
CFW_API cfw_status cfw_bandwidth_rule_parse(const char* name, cfw_bandwidth_rule* out);
CFW_API const char* cfw_bandwidth_rule_name(cfw_bandwidth_rule rule);
CFW_API const char* cfw_branch_name(cfw_branch branch);

typedef struct cfw_distribution cfw_distribution;

/* Spec strings: "gaussian:m,s", "laplace:m,b", "uniform:a,b",
 * "logitnormal:m,s", "relu:m,s". */
CFW_API cfw_status cfw_distribution_parse(const char* spec, cfw_distribution** out);
CFW_API cfw_status cfw_distribution_empirical(const double* x, size_t n, cfw_distribution** out);
CFW_API void cfw_distribution_free(cfw_distribution* dist);
/* Copies text into buf (NUL-terminated, truncated to cap). *needed, when not
 * NULL, receives the full length excluding the terminator. */
CFW_API cfw_status cfw_distribution_describe(const cfw_distribution* dist, char* buf, size_t cap,
                                             size_t* needed);
CFW_API cfw_status cfw_distribution_cdf(const cfw_distribution* dist, double x, double* out);
CFW_API cfw_status cfw_distribution_quantile(const cfw_distribution* dist, double p, double* out);
CFW_API cfw_status cfw_distribution_moments(const cfw_distribution* dist, double* mean,
                                            double* variance);
CFW_API cfw_status cfw_distribution_sample(const cfw_distribution* dist, uint64_t seed,
                                           uint64_t stream, size_t n, double* out);

typedef struct cfw_solve_report {
  double theta1;
  double theta2;
  cfw_branch branch;
  double objective; /* squared W2 */
  double condition;
} cfw_solve_report;

CFW_API cfw_status cfw_solve_w2(const cfw_distribution* dist, cfw_activation act,
                                cfw_solve_report* out);
CFW_API cfw_status cfw_objective_w2(const cfw_distribution* dist, cfw_activation act,
                                    double theta1, double theta2, double* out);
CFW_API cfw_status cfw_w1_residuals(const cfw_distribution* dist, cfw_activation act,
                                    double theta1, double theta2, double* r1, double* r2);

typedef struct cfw_kde cfw_kde;

/* bandwidth <= 0 selects the bandwidth by rule. */
CFW_API cfw_status cfw_kde_fit(const double* x, size_t n, double bandwidth,
                               cfw_bandwidth_rule rule, cfw_kde** out);
CFW_API void cfw_kde_free(cfw_kde* kde);
CFW_API cfw_status cfw_kde_bandwidth(const cfw_kde* kde, double* out);
CFW_API cfw_status cfw_kde_cdf(const cfw_kde* kde, double x, double* out);
CFW_API cfw_status cfw_kde_quantile(const cfw_kde* kde, double p, double* out);
CFW_API cfw_status cfw_kde_pdf(const cfw_kde* kde, double x, double* out);
CFW_API cfw_status cfw_solve_w2_empirical(const double* x, size_t n, const cfw_kde* kde,
                                          cfw_activation act, cfw_solve_report* out);
CFW_API cfw_status cfw_w1_residuals_empirical(const double* x, size_t n, const cfw_kde* kde,
                                              cfw_activation act, double theta1, double theta2,
                                              double* r1, double* r2);

CFW_API cfw_status cfw_wq_empirical(const double* x, size_t nx, const double* y, size_t ny, int q,
                                    double* out);
/* x must be sorted ascending. */
CFW_API cfw_status cfw_wq_to_gaussian(const double* x_sorted, size_t n, double sigma, int q,
                                      double* out);

typedef struct cfw_sample_matrix cfw_sample_matrix;

/* "iid:<law spec>", "ar:<phi>:gaussian" or "ar:<phi>:student:<dof>". */
CFW_API cfw_status cfw_sample_matrix_synthetic(const char* spec, size_t d, size_t m, uint64_t seed,
                                               cfw_sample_matrix** out);
CFW_API cfw_status cfw_sample_matrix_from_rows(const double* data, size_t rows, size_t cols,
                                               cfw_sample_matrix** out);
CFW_API cfw_status cfw_sample_matrix_read_csv(const char* path, cfw_sample_matrix** out);
CFW_API cfw_status cfw_sample_matrix_write_csv(const cfw_sample_matrix* mat, const char* path);
CFW_API void cfw_sample_matrix_free(cfw_sample_matrix* mat);
CFW_API cfw_status cfw_sample_matrix_shape(const cfw_sample_matrix* mat, size_t* rows, size_t* cols);
/* Row-major view valid until the handle is modified or freed. */
CFW_API const double* cfw_sample_matrix_data(const cfw_sample_matrix* mat);
CFW_API cfw_status cfw_sample_matrix_column(const cfw_sample_matrix* mat, size_t j, double* out);
CFW_API cfw_status cfw_sample_matrix_center(cfw_sample_matrix* mat);
CFW_API cfw_status cfw_sigma_tilde(const cfw_sample_matrix* mat, double* out);

typedef struct cfw_linear_generator cfw_linear_generator;

CFW_API cfw_status cfw_linear_generator_from_rows(const double* theta, size_t d, size_t r,
                                                  cfw_linear_generator** out);
CFW_API cfw_status cfw_optimal_theta_w2(size_t d, size_t r, double sigma_tilde,
                                        cfw_linear_generator** out);
CFW_API cfw_status cfw_optimal_theta_w1(size_t d, size_t r, double sigma_tilde,
                                        cfw_linear_generator** out);
CFW_API cfw_status cfw_r_pca(const cfw_sample_matrix* mat, size_t r, cfw_linear_generator** out);
CFW_API void cfw_linear_generator_free(cfw_linear_generator* gen);
CFW_API cfw_status cfw_linear_generator_shape(const cfw_linear_generator* gen, size_t* d, size_t* r);
/* d eigenvalues of Theta Theta^T, descending. */
CFW_API cfw_status cfw_linear_generator_spectrum(const cfw_linear_generator* gen, double* out);

typedef struct cfw_sliced_config {
  size_t n_projections;
  int q;
  uint64_t seed;
  unsigned threads;
} cfw_sliced_config;

CFW_API cfw_sliced_config cfw_sliced_config_default(void);
/* All generators are evaluated on the same directions. */
CFW_API cfw_status cfw_sliced_wq(const cfw_sample_matrix* mat, const cfw_linear_generator* const* gens,
                                 size_t n_gens, const cfw_sliced_config* cfg, double* values,
                                 double* std_errors);
CFW_API cfw_status cfw_objective_mc(const cfw_linear_generator* gen, double sigma_tilde, int q,
                                    size_t n, uint64_t seed, double* value, double* std_error);
CFW_API cfw_status cfw_objective_quadrature(const double* s, size_t d, double sigma_tilde,
                                            double* out);
CFW_API cfw_status cfw_objective_carlson(const double* s, size_t d, double sigma_tilde, double* out);
CFW_API cfw_status cfw_closed_form_objective_d2(double s11, double s22, double sigma_tilde,
                                                double* out);

CFW_API cfw_status cfw_gamma_ratio_sq(uint64_t d, double* out);
CFW_API cfw_status cfw_ub_value(uint64_t d, double sigma_tilde, double* out);
CFW_API cfw_status cfw_elliptic_k(double m, double* out);
CFW_API cfw_status cfw_elliptic_e(double m, double* out);
CFW_API cfw_status cfw_carlson_r_half(const double* b, const double* z, size_t n, double* out);

typedef struct cfw_sgd_config {
  double learning_rate;
  double momentum;
  size_t batch_size;
  size_t iterations;
  uint64_t seed;
  double theta1_init;
  double theta2_init;
  cfw_activation activation;
  cfw_bandwidth_rule bandwidth_rule;
  double bandwidth; /* <= 0 selects by rule */
} cfw_sgd_config;

typedef struct cfw_sgd_trace cfw_sgd_trace;

CFW_API cfw_sgd_config cfw_sgd_config_default(void);
/* trace may be NULL. */
CFW_API cfw_status cfw_fit_w1(const double* x, size_t n, const cfw_sgd_config* cfg, double* theta1,
                              double* theta2, cfw_sgd_trace** trace);
CFW_API void cfw_sgd_trace_free(cfw_sgd_trace* trace);
CFW_API size_t cfw_sgd_trace_length(const cfw_sgd_trace* trace);
CFW_API cfw_status cfw_sgd_trace_step(const cfw_sgd_trace* trace, size_t i, double* theta1,
                                      double* theta2, double* residual_norm);

#ifdef __cplusplus
}
#endif

#endif /* CFWGAN_CFWGAN_H_ */
