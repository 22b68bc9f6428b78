/*
 * Copyright 2026 The semiquant Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libsemiquant.
 *
 * Objects are opaque handles created by sq_*_create / builder calls and
 * released with the matching sq_*_free. Every fallible call returns an
 * sq_status; on failure sq_last_error() describes the problem (per thread,
 * valid until the next call on that thread).
 *
 * Strings are returned through (buf, cap, needed): needed receives the length
 * including the terminating NUL, buf is written when cap is large enough,
 * and SQ_ERR_BUFFER_TOO_SMALL is returned otherwise. buf may be NULL with
 * cap 0 to query the size. */

#ifndef SEMIQUANT_SEMIQUANT_H_
#define SEMIQUANT_SEMIQUANT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SEMIQUANT_BUILDING_LIBRARY)
#define SQ_API __declspec(dllexport)
#else
#define SQ_API __declspec(dllimport)
#endif
#else
#define SQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sq_status {
  SQ_OK = 0,
  SQ_ERR_CONFIG = 1,
  SQ_ERR_NUMERICAL = 2,
  SQ_ERR_INVALID_ARGUMENT = 3,
  SQ_ERR_DIMENSION = 4,
  SQ_ERR_PARSE = 5,
  SQ_ERR_IO = 6,
  SQ_ERR_DEGENERATE = 7, /* stationary state not unique */
  SQ_ERR_BUFFER_TOO_SMALL = 8,
  SQ_ERR_INTERNAL = 9
} sq_status;

typedef struct sq_complex {
  double re;
  double im;
} sq_complex;

typedef struct sq_polynomial sq_polynomial;
typedef struct sq_faq_system sq_faq_system;
typedef struct sq_lindblad_model sq_lindblad_model;
typedef struct sq_density sq_density;

SQ_API const char* sq_version(void);
SQ_API const char* sq_last_error(void);
SQ_API const char* sq_status_name(sq_status status);

/* Polynomials in z_k, z_k^* (text form "2*z1*z1c + (0.5-1i)*z2^2"). */
SQ_API sq_status sq_polynomial_parse(const char* text, size_t mode_count, sq_polynomial** out);
SQ_API void sq_polynomial_free(sq_polynomial* p);
SQ_API sq_status sq_polynomial_mode_count(const sq_polynomial* p, size_t* out);
SQ_API sq_status sq_polynomial_to_string(const sq_polynomial* p, char* buf, size_t cap, size_t* needed);
SQ_API sq_status sq_polynomial_evaluate(const sq_polynomial* p, const sq_complex* coords, size_t n, sq_complex* out);
SQ_API sq_status sq_polynomial_poisson_bracket(const sq_polynomial* a, const sq_polynomial* b, sq_polynomial** out);

/* Classical systems dz/dt = -i dH/dz* + sum_j (conj(R_j) dR_j/dz* - R_j dconj(R_j)/dz*). */
SQ_API sq_status sq_faq_create(const sq_polynomial* hamiltonian, const sq_polynomial* const* channels,
                               size_t channel_count, sq_faq_system** out);
SQ_API void sq_faq_free(sq_faq_system* s);
/* out receives n values; n must equal the mode count. */
SQ_API sq_status sq_faq_drift(const sq_faq_system* s, const sq_complex* point, size_t n, sq_complex* out);
SQ_API sq_status sq_faq_divergence(const sq_faq_system* s, const sq_complex* point, size_t n, double* out);

/* Lindblad models with the dissipator sum_j (2 R rho R^+ - R^+ R rho - rho R^+ R). */
SQ_API sq_status sq_model_oscillator(double omega0, double lambda, double u, size_t dim, sq_lindblad_model** out);
SQ_API sq_status sq_model_limit_cycle(double omega, double lambda, double mu, size_t dim, sq_lindblad_model** out);
/* Spin l = twice_l / 2. */
SQ_API sq_status sq_model_rotator_spin(double omega1, double omega2, double lambda, unsigned twice_l,
                                       sq_lindblad_model** out);
SQ_API void sq_model_free(sq_lindblad_model* m);
SQ_API sq_status sq_model_dim(const sq_lindblad_model* m, size_t* out);

/* Unique stationary state. null_tol <= 0 selects the default 1e-9. On
 * SQ_ERR_DEGENERATE, *null_dim (if not NULL) receives the null-space dimension. */
SQ_API sq_status sq_stationary(const sq_lindblad_model* m, double null_tol, sq_density** out, size_t* null_dim);
SQ_API void sq_density_free(sq_density* d);
SQ_API sq_status sq_density_dim(const sq_density* d, size_t* out);
/* Row-major dim x dim entries; cap counts sq_complex elements. */
SQ_API sq_status sq_density_matrix(const sq_density* d, sq_complex* out, size_t cap);
/* tr(rho A) for a row-major dim x dim operator A. */
SQ_API sq_status sq_density_expectation(const sq_density* d, const sq_complex* op, size_t dim, sq_complex* out);
SQ_API sq_status sq_stationary_residual(const sq_lindblad_model* m, const sq_density* d, double* out);

/* Closed-form baselines. */
SQ_API sq_status sq_kummer_phi(double a, double c, double x, double* out);
SQ_API sq_status sq_generating_function(double nu, double u, double* out);
SQ_API sq_status sq_mean_n(double nu, double* out);
SQ_API sq_status sq_mandel_q(double nu, double* out);
SQ_API sq_status sq_ly2_analytic(double n_excitations, double* out);

/* Experiments. */
typedef struct sq_run_options {
  const char* output_dir; /* NULL: use the config value */
  int has_seed;           /* nonzero: seed overrides the config value */
  uint64_t seed;
  unsigned jobs; /* sweep worker threads; 0 is treated as 1 */
} sq_run_options;

/* SQ_OK when valid, SQ_ERR_CONFIG otherwise; the report lists one problem per line. */
SQ_API sq_status sq_config_validate(const char* path, char* report, size_t cap, size_t* needed);
SQ_API sq_status sq_config_schema(char* buf, size_t cap, size_t* needed);
/* Runs the config; run_dir receives the output directory. opts may be NULL. */
SQ_API sq_status sq_run(const char* config_path, const sq_run_options* opts, char* run_dir, size_t cap,
                        size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* SEMIQUANT_SEMIQUANT_H_ */
