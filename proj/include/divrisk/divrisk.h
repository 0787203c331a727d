/*******************************************************************************
* Copyright 2026 The divrisk Authors
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
*******************************************************************************/

/* C interface to the divrisk library. Every function that can fail returns a
 * divrisk_status; on failure divrisk_last_error() describes the fault for the
 * calling thread. Output arrays are caller-allocated: pass NULL to skip them,
 * or a buffer of at least the documented length. */

#ifndef DIVRISK_H
#define DIVRISK_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(DIVRISK_BUILDING)
#define DIVRISK_API __declspec(dllexport)
#else
#define DIVRISK_API __declspec(dllimport)
#endif
#else
#define DIVRISK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum divrisk_status {
  DIVRISK_OK = 0,
  DIVRISK_ERR_UNSUPPORTED_DIVERGENCE = 1,
  DIVRISK_ERR_INVALID_PARAMETER = 2,
  DIVRISK_ERR_DIMENSION = 3,
  DIVRISK_ERR_SUPPORT = 4,
  DIVRISK_ERR_EMPTY_DATA = 5,
  DIVRISK_ERR_INVALID_VALUE = 6,
  DIVRISK_ERR_DOMAIN = 7,
  DIVRISK_ERR_INVALID_SPECTRUM = 8,
  DIVRISK_ERR_STALE_MULTIPLIER = 9,
  DIVRISK_ERR_ORACLE_SIZE = 10,
  DIVRISK_ERR_PANEL = 11,
  DIVRISK_ERR_NUMERIC = 12,
  DIVRISK_ERR_PARSE = 13,
  DIVRISK_ERR_IO = 14,
  DIVRISK_ERR_NULL_ARGUMENT = 15,
  DIVRISK_ERR_BUFFER_TOO_SMALL = 16,
  DIVRISK_ERR_INTERNAL = 17
} divrisk_status;

typedef struct divrisk_divergence divrisk_divergence;
typedef struct divrisk_distribution divrisk_distribution;
typedef struct divrisk_panel divrisk_panel;

DIVRISK_API const char* divrisk_version(void);
DIVRISK_API const char* divrisk_status_string(divrisk_status status);

/* Message of the most recent failure on this thread, "" if none. */
DIVRISK_API const char* divrisk_last_error(void);
/* 1-based input position of the last parse failure, 0 otherwise. */
DIVRISK_API size_t divrisk_last_error_line(void);
DIVRISK_API size_t divrisk_last_error_column(void);
/* Search trace of the last numeric failure, "" otherwise. */
DIVRISK_API const char* divrisk_last_error_trace(void);

/* ---- divergences ------------------------------------------------------ */

/* config: "kl" | "chi2" | "power:<p>". */
DIVRISK_API divrisk_status divrisk_divergence_create(const char* config,
                                                     divrisk_divergence** out);
DIVRISK_API void divrisk_divergence_destroy(divrisk_divergence* div);
DIVRISK_API const char* divrisk_divergence_name(const divrisk_divergence* div);
DIVRISK_API int divrisk_divergence_delta2(const divrisk_divergence* div);
DIVRISK_API divrisk_status divrisk_divergence_phi(const divrisk_divergence* div,
                                                  double x, double* out);
DIVRISK_API divrisk_status divrisk_divergence_psi(const divrisk_divergence* div,
                                                  double y, double* out);

/* ---- empirical distributions ----------------------------------------- */

/* weights may be NULL for equally likely samples. */
DIVRISK_API divrisk_status divrisk_distribution_create(const double* values,
                                                       const double* weights,
                                                       size_t n,
                                                       divrisk_distribution** out);
DIVRISK_API divrisk_status divrisk_distribution_parse_csv(const char* text,
                                                          divrisk_distribution** out);
DIVRISK_API divrisk_status divrisk_distribution_load_csv(const char* path,
                                                         divrisk_distribution** out);
DIVRISK_API void divrisk_distribution_destroy(divrisk_distribution* dist);
DIVRISK_API size_t divrisk_distribution_size(const divrisk_distribution* dist);
/* atoms and probs: n entries each, either may be NULL. */
DIVRISK_API divrisk_status divrisk_distribution_atoms(const divrisk_distribution* dist,
                                                      double* atoms, double* probs,
                                                      size_t capacity);

typedef struct divrisk_summary {
  double mean;
  double variance;
  double essinf;
  double esssup;
} divrisk_summary;

DIVRISK_API divrisk_status divrisk_distribution_summary(
    const divrisk_distribution* dist, divrisk_summary* out);

DIVRISK_API divrisk_status divrisk_avar(const divrisk_distribution* dist,
                                        double alpha, double* out);

/* ---- risk ------------------------------------------------------------- */

typedef struct divrisk_options {
  /* Width in log t at which the outer search stops. */
  double objective_tol;
} divrisk_options;

DIVRISK_API void divrisk_options_init(divrisk_options* options);

typedef struct divrisk_risk_result {
  double value;
  int has_optimizer; /* t_star and mu_star are meaningful */
  double t_star;
  double mu_star;
  int attained;
  double residual_mean;       /* 1 - E psi'(X/t - mu) */
  double residual_divergence; /* beta - E phi(psi'(X/t - mu)) */
  int attainment_guaranteed;  /* P(X = esssup) < 1 - alpha_bar */
  double alpha_bar;
  double avar_at_alpha_bar;   /* lower bound on value */
} divrisk_risk_result;

/* density: n entries, may be NULL. options may be NULL. */
DIVRISK_API divrisk_status divrisk_risk(const divrisk_distribution* dist,
                                        const divrisk_divergence* div, double beta,
                                        const divrisk_options* options,
                                        divrisk_risk_result* out, double* density,
                                        size_t capacity);

DIVRISK_API divrisk_status divrisk_alpha_bar(const divrisk_divergence* div,
                                             double beta, double* out);

/* ---- dual ------------------------------------------------------------- */

typedef enum divrisk_dual_source {
  DIVRISK_DUAL_CHARACTERIZING_EQUATIONS = 0,
  DIVRISK_DUAL_PROJECTED_ASCENT = 1,
  DIVRISK_DUAL_BRUTE_FORCE = 2
} divrisk_dual_source;

typedef struct divrisk_dual_result {
  double objective;
  double mean_slack;
  double divergence_slack;
  divrisk_dual_source source;
} divrisk_dual_result;

/* z: n entries, may be NULL. */
DIVRISK_API divrisk_status divrisk_dual(const divrisk_distribution* dist,
                                        const divrisk_divergence* div, double beta,
                                        divrisk_dual_result* out, double* z,
                                        size_t capacity);

DIVRISK_API divrisk_status divrisk_brute_force_dual(const divrisk_distribution* dist,
                                                    const divrisk_divergence* div,
                                                    double beta, double* out);

/* ---- norms ------------------------------------------------------------ */

typedef struct divrisk_norm_result {
  double phi_beta_norm;
  double luxemburg;
  double orlicz;
  int has_dual_norm;
  double dual_norm;
} divrisk_norm_result;

DIVRISK_API divrisk_status divrisk_norms(const divrisk_distribution* dist,
                                         const divrisk_divergence* div, double beta,
                                         divrisk_norm_result* out);

typedef struct divrisk_dual_norm_result {
  double value;
  int has_lambda;
  double lambda;
  double level; /* c_Z(lambda) */
} divrisk_dual_norm_result;

/* witness: n entries, may be NULL. */
DIVRISK_API divrisk_status divrisk_dual_norm(const divrisk_distribution* z_dist,
                                             const divrisk_divergence* div,
                                             double beta,
                                             divrisk_dual_norm_result* out,
                                             double* witness, size_t capacity);

/* ---- portfolios ------------------------------------------------------- */

DIVRISK_API divrisk_status divrisk_panel_parse_csv(const char* text,
                                                   divrisk_panel** out);
DIVRISK_API divrisk_status divrisk_panel_load_csv(const char* path,
                                                  divrisk_panel** out);
DIVRISK_API void divrisk_panel_destroy(divrisk_panel* panel);
DIVRISK_API size_t divrisk_panel_assets(const divrisk_panel* panel);
DIVRISK_API size_t divrisk_panel_scenarios(const divrisk_panel* panel);
/* NULL when index is out of range. */
DIVRISK_API const char* divrisk_panel_asset_name(const divrisk_panel* panel,
                                                 size_t index);

typedef struct divrisk_portfolio_result {
  double risk;
  int has_optimizer;
  double t_star;
  double mu_star;
  int iterations;
  int converged;
} divrisk_portfolio_result;

/* weights: one entry per asset, may be NULL. */
DIVRISK_API divrisk_status divrisk_portfolio(const divrisk_panel* panel,
                                             const divrisk_divergence* div,
                                             double beta,
                                             divrisk_portfolio_result* out,
                                             double* weights, size_t capacity);

#ifdef __cplusplus
}
#endif

#endif /* DIVRISK_H */
