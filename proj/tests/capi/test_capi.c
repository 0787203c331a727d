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

/* Exercises the C interface from C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "divrisk/divrisk.h"

static int failures = 0;

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

#define CHECK_NEAR(a, b, tol) CHECK(fabs((a) - (b)) <= (tol))

static void test_errors(void) {
  divrisk_divergence* div = NULL;
  CHECK(divrisk_divergence_create("nope", &div) == DIVRISK_ERR_UNSUPPORTED_DIVERGENCE);
  CHECK(div == NULL);
  CHECK(strlen(divrisk_last_error()) > 0);
  CHECK(divrisk_divergence_create("power:0.5", &div) == DIVRISK_ERR_INVALID_PARAMETER);
  CHECK(divrisk_divergence_create(NULL, &div) == DIVRISK_ERR_NULL_ARGUMENT);
  CHECK(strcmp(divrisk_status_string(DIVRISK_ERR_PARSE), "parse") == 0);
  CHECK(strcmp(divrisk_status_string(DIVRISK_OK), "ok") == 0);

  divrisk_distribution* dist = NULL;
  CHECK(divrisk_distribution_create(NULL, NULL, 0, &dist) == DIVRISK_ERR_EMPTY_DATA);
  CHECK(divrisk_distribution_parse_csv("1\n2\nx\n", &dist) == DIVRISK_ERR_PARSE);
  CHECK(divrisk_last_error_line() == 3);
  CHECK(divrisk_last_error_column() == 1);
  CHECK(divrisk_distribution_load_csv("/nonexistent.csv", &dist) == DIVRISK_ERR_IO);
  CHECK(divrisk_last_error_line() == 0);
}

static void test_risk_and_dual(void) {
  const double x[] = {-1.0, 1.0};
  divrisk_divergence* chi2 = NULL;
  divrisk_distribution* dist = NULL;
  CHECK(divrisk_divergence_create("chi2", &chi2) == DIVRISK_OK);
  CHECK(strcmp(divrisk_divergence_name(chi2), "chi2") == 0);
  CHECK(divrisk_divergence_delta2(chi2) == 1);
  CHECK(divrisk_distribution_create(x, NULL, 2, &dist) == DIVRISK_OK);
  CHECK(divrisk_distribution_size(dist) == 2);

  double psi = 0.0;
  CHECK(divrisk_divergence_psi(chi2, 2.0, &psi) == DIVRISK_OK);
  CHECK_NEAR(psi, 3.0, 1e-12);

  divrisk_risk_result r;
  double density[2];
  CHECK(divrisk_risk(dist, chi2, 0.25, NULL, &r, density, 2) == DIVRISK_OK);
  CHECK_NEAR(r.value, 0.5, 1e-8);
  CHECK(r.attained == 1);
  CHECK(r.has_optimizer == 1);
  CHECK(r.avar_at_alpha_bar <= r.value + 1e-9);
  CHECK_NEAR(density[0], 0.5, 1e-6);

  CHECK(divrisk_risk(dist, chi2, 0.25, NULL, &r, density, 1) ==
        DIVRISK_ERR_BUFFER_TOO_SMALL);
  CHECK(divrisk_risk(dist, chi2, -1.0, NULL, &r, NULL, 0) ==
        DIVRISK_ERR_INVALID_PARAMETER);

  divrisk_options options;
  divrisk_options_init(&options);
  CHECK(options.objective_tol > 0.0);
  options.objective_tol = 0.0;
  CHECK(divrisk_risk(dist, chi2, 0.25, &options, &r, NULL, 0) ==
        DIVRISK_ERR_INVALID_PARAMETER);

  divrisk_dual_result d;
  double z[2];
  CHECK(divrisk_dual(dist, chi2, 0.25, &d, z, 2) == DIVRISK_OK);
  CHECK_NEAR(d.objective, 0.5, 1e-8);
  CHECK_NEAR(z[0], 0.5, 1e-7);
  CHECK_NEAR(z[1], 1.5, 1e-7);
  CHECK(d.source == DIVRISK_DUAL_CHARACTERIZING_EQUATIONS);

  double brute = 0.0;
  CHECK(divrisk_brute_force_dual(dist, chi2, 0.25, &brute) == DIVRISK_OK);
  CHECK_NEAR(brute, 0.5, 1e-4);

  double a = 0.0;
  CHECK(divrisk_alpha_bar(chi2, 1.0, &a) == DIVRISK_OK);
  CHECK_NEAR(a, 0.5, 1e-9);

  divrisk_norm_result n;
  CHECK(divrisk_norms(dist, chi2, 0.25, &n) == DIVRISK_OK);
  CHECK(n.has_dual_norm == 1);
  CHECK_NEAR(n.phi_beta_norm, 1.0, 1e-9);

  divrisk_distribution_destroy(dist);
  divrisk_divergence_destroy(chi2);
}

static void test_distribution(void) {
  const double x[] = {4.0, 1.0, 3.0, 2.0};
  const double w[] = {1.0, 1.0, 1.0, 1.0};
  divrisk_distribution* dist = NULL;
  CHECK(divrisk_distribution_create(x, w, 4, &dist) == DIVRISK_OK);
  double v = 0.0;
  CHECK(divrisk_avar(dist, 0.5, &v) == DIVRISK_OK);
  CHECK_NEAR(v, 3.5, 1e-15);
  CHECK(divrisk_avar(dist, 1.0, &v) == DIVRISK_ERR_DOMAIN);

  divrisk_summary s;
  CHECK(divrisk_distribution_summary(dist, &s) == DIVRISK_OK);
  CHECK_NEAR(s.mean, 2.5, 1e-15);
  CHECK(s.essinf == 1.0 && s.esssup == 4.0);

  double atoms[4], probs[4];
  CHECK(divrisk_distribution_atoms(dist, atoms, probs, 4) == DIVRISK_OK);
  CHECK(atoms[0] == 4.0 && probs[3] == 0.25);
  CHECK(divrisk_distribution_atoms(dist, atoms, NULL, 3) == DIVRISK_ERR_BUFFER_TOO_SMALL);
  divrisk_distribution_destroy(dist);

  CHECK(divrisk_distribution_parse_csv("# c\n0,1\n1,3\n", &dist) == DIVRISK_OK);
  CHECK(divrisk_distribution_summary(dist, &s) == DIVRISK_OK);
  CHECK_NEAR(s.mean, 0.75, 1e-15);
  divrisk_distribution_destroy(dist);

  const double zz[] = {0.0, 2.0};
  divrisk_divergence* chi2 = NULL;
  CHECK(divrisk_divergence_create("chi2", &chi2) == DIVRISK_OK);
  CHECK(divrisk_distribution_create(zz, NULL, 2, &dist) == DIVRISK_OK);
  divrisk_dual_norm_result dn;
  double witness[2];
  CHECK(divrisk_dual_norm(dist, chi2, 0.25, &dn, witness, 2) == DIVRISK_OK);
  CHECK_NEAR(dn.value, 4.0 / 3.0, 1e-8);
  CHECK(dn.has_lambda == 1);
  CHECK_NEAR(0.5 * witness[0] + 0.5 * witness[1], 1.0, 1e-9);
  divrisk_distribution_destroy(dist);
  divrisk_divergence_destroy(chi2);
}

static void test_portfolio(void) {
  divrisk_panel* panel = NULL;
  CHECK(divrisk_panel_parse_csv("A,B\n-1,1\n1,-1\n", &panel) == DIVRISK_OK);
  CHECK(divrisk_panel_assets(panel) == 2);
  CHECK(divrisk_panel_scenarios(panel) == 2);
  CHECK(strcmp(divrisk_panel_asset_name(panel, 1), "B") == 0);
  CHECK(divrisk_panel_asset_name(panel, 2) == NULL);

  divrisk_divergence* chi2 = NULL;
  CHECK(divrisk_divergence_create("chi2", &chi2) == DIVRISK_OK);
  divrisk_portfolio_result r;
  double w[2];
  CHECK(divrisk_portfolio(panel, chi2, 0.25, &r, w, 2) == DIVRISK_OK);
  CHECK_NEAR(r.risk, 0.0, 1e-6);
  CHECK_NEAR(w[0] + w[1], 1.0, 1e-12);
  CHECK(divrisk_portfolio(panel, chi2, 0.25, &r, w, 1) == DIVRISK_ERR_BUFFER_TOO_SMALL);
  divrisk_panel_destroy(panel);

  CHECK(divrisk_panel_parse_csv("A,B\n1\n", &panel) == DIVRISK_ERR_PARSE);
  CHECK(divrisk_last_error_line() == 2);
  divrisk_divergence_destroy(chi2);
  divrisk_panel_destroy(NULL);
  divrisk_distribution_destroy(NULL);
  divrisk_divergence_destroy(NULL);
}

int main(void) {
  CHECK(strlen(divrisk_version()) > 0);
  test_errors();
  test_risk_and_dual();
  test_distribution();
  test_portfolio();
  if (failures > 0) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return EXIT_FAILURE;
  }
  printf("all C API checks passed\n");
  return EXIT_SUCCESS;
}
