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

#include "divrisk/divrisk.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "divrisk/divergence.hpp"
#include "divrisk/dual.hpp"
#include "divrisk/empirical.hpp"
#include "divrisk/error.hpp"
#include "divrisk/norms.hpp"
#include "divrisk/portfolio.hpp"
#include "divrisk/risk.hpp"

struct divrisk_divergence {
  divrisk::DivergenceSpec spec;
};

struct divrisk_distribution {
  divrisk::EmpiricalDistribution dist;
};

struct divrisk_panel {
  divrisk::AssetPanel panel;
};

namespace {

struct LastError {
  std::string message;
  std::string trace;
  std::size_t line = 0;
  std::size_t column = 0;
};

thread_local LastError last_error;

divrisk_status fail(divrisk_status status, std::string message) {
  last_error = LastError{std::move(message), {}, 0, 0};
  return status;
}

divrisk_status from_code(divrisk::ErrorCode code) {
  return static_cast<divrisk_status>(static_cast<int>(code) + 1);
}

template <class F>
divrisk_status guarded(F&& body) {
  try {
    last_error = LastError{};
    body();
    return DIVRISK_OK;
  } catch (const divrisk::ParseError& e) {
    last_error = LastError{e.what(), {}, e.line(), e.column()};
    return DIVRISK_ERR_PARSE;
  } catch (const divrisk::NumericError& e) {
    last_error = LastError{e.what(), e.trace(), 0, 0};
    return DIVRISK_ERR_NUMERIC;
  } catch (const divrisk::Error& e) {
    last_error = LastError{e.what(), {}, 0, 0};
    return from_code(e.code());
  } catch (const std::bad_alloc&) {
    return fail(DIVRISK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DIVRISK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DIVRISK_ERR_INTERNAL, "unknown failure");
  }
}

bool fits(const double* buffer, std::size_t capacity, std::size_t needed) {
  return buffer == nullptr || capacity >= needed;
}

divrisk_status too_small(std::size_t needed) {
  return fail(DIVRISK_ERR_BUFFER_TOO_SMALL,
              "output buffer needs " + std::to_string(needed) + " entries");
}

void copy_out(const std::vector<double>& v, double* buffer) {
  if (buffer == nullptr) return;
  for (std::size_t i = 0; i < v.size(); ++i) buffer[i] = v[i];
}

}  // namespace

extern "C" {

const char* divrisk_version(void) { return DIVRISK_VERSION; }

const char* divrisk_status_string(divrisk_status status) {
  switch (status) {
    case DIVRISK_OK: return "ok";
    case DIVRISK_ERR_UNSUPPORTED_DIVERGENCE: return "unsupported_divergence";
    case DIVRISK_ERR_INVALID_PARAMETER: return "invalid_parameter";
    case DIVRISK_ERR_DIMENSION: return "dimension";
    case DIVRISK_ERR_SUPPORT: return "support";
    case DIVRISK_ERR_EMPTY_DATA: return "empty_data";
    case DIVRISK_ERR_INVALID_VALUE: return "invalid_value";
    case DIVRISK_ERR_DOMAIN: return "domain";
    case DIVRISK_ERR_INVALID_SPECTRUM: return "invalid_spectrum";
    case DIVRISK_ERR_STALE_MULTIPLIER: return "stale_multiplier";
    case DIVRISK_ERR_ORACLE_SIZE: return "oracle_size";
    case DIVRISK_ERR_PANEL: return "panel";
    case DIVRISK_ERR_NUMERIC: return "numeric";
    case DIVRISK_ERR_PARSE: return "parse";
    case DIVRISK_ERR_IO: return "io";
    case DIVRISK_ERR_NULL_ARGUMENT: return "null_argument";
    case DIVRISK_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case DIVRISK_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* divrisk_last_error(void) { return last_error.message.c_str(); }
size_t divrisk_last_error_line(void) { return last_error.line; }
size_t divrisk_last_error_column(void) { return last_error.column; }
const char* divrisk_last_error_trace(void) { return last_error.trace.c_str(); }

divrisk_status divrisk_divergence_create(const char* config,
                                         divrisk_divergence** out) {
  if (config == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "config and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new divrisk_divergence{divrisk::make_builtin_divergence(config)};
  });
}

void divrisk_divergence_destroy(divrisk_divergence* div) { delete div; }

const char* divrisk_divergence_name(const divrisk_divergence* div) {
  return div == nullptr ? "" : div->spec.name().c_str();
}

int divrisk_divergence_delta2(const divrisk_divergence* div) {
  return div != nullptr && div->spec.delta2() ? 1 : 0;
}

divrisk_status divrisk_divergence_phi(const divrisk_divergence* div, double x,
                                      double* out) {
  if (div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "div and out are required");
  }
  return guarded([&] { *out = div->spec.phi(x); });
}

divrisk_status divrisk_divergence_psi(const divrisk_divergence* div, double y,
                                      double* out) {
  if (div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "div and out are required");
  }
  return guarded([&] { *out = div->spec.psi(y); });
}

divrisk_status divrisk_distribution_create(const double* values,
                                           const double* weights, size_t n,
                                           divrisk_distribution** out) {
  if (out == nullptr || (values == nullptr && n > 0)) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "values and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    std::span<const double> v(values, n);
    if (weights == nullptr) {
      *out = new divrisk_distribution{divrisk::EmpiricalDistribution::from_samples(v)};
    } else {
      *out = new divrisk_distribution{divrisk::EmpiricalDistribution::from_weighted(
          v, std::span<const double>(weights, n))};
    }
  });
}

divrisk_status divrisk_distribution_parse_csv(const char* text,
                                              divrisk_distribution** out) {
  if (text == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "text and out are required");
  }
  *out = nullptr;
  return guarded(
      [&] { *out = new divrisk_distribution{divrisk::parse_samples_csv(text)}; });
}

divrisk_status divrisk_distribution_load_csv(const char* path,
                                             divrisk_distribution** out) {
  if (path == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "path and out are required");
  }
  *out = nullptr;
  return guarded(
      [&] { *out = new divrisk_distribution{divrisk::load_samples_csv(path)}; });
}

void divrisk_distribution_destroy(divrisk_distribution* dist) { delete dist; }

size_t divrisk_distribution_size(const divrisk_distribution* dist) {
  return dist == nullptr ? 0 : dist->dist.size();
}

divrisk_status divrisk_distribution_atoms(const divrisk_distribution* dist,
                                          double* atoms, double* probs,
                                          size_t capacity) {
  if (dist == nullptr) return fail(DIVRISK_ERR_NULL_ARGUMENT, "dist is required");
  const std::size_t n = dist->dist.size();
  if (!fits(atoms, capacity, n) || !fits(probs, capacity, n)) return too_small(n);
  last_error = LastError{};
  for (std::size_t i = 0; i < n; ++i) {
    if (atoms != nullptr) atoms[i] = dist->dist.atoms()[i];
    if (probs != nullptr) probs[i] = dist->dist.probs()[i];
  }
  return DIVRISK_OK;
}

divrisk_status divrisk_distribution_summary(const divrisk_distribution* dist,
                                            divrisk_summary* out) {
  if (dist == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "dist and out are required");
  }
  return guarded([&] {
    *out = divrisk_summary{dist->dist.mean(), dist->dist.variance(),
                           dist->dist.essinf(), dist->dist.esssup()};
  });
}

divrisk_status divrisk_avar(const divrisk_distribution* dist, double alpha,
                            double* out) {
  if (dist == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "dist and out are required");
  }
  return guarded([&] { *out = divrisk::avar(dist->dist, alpha); });
}

void divrisk_options_init(divrisk_options* options) {
  if (options == nullptr) return;
  options->objective_tol = divrisk::PrimalOptions{}.objective_tol;
}

divrisk_status divrisk_risk(const divrisk_distribution* dist,
                            const divrisk_divergence* div, double beta,
                            const divrisk_options* options,
                            divrisk_risk_result* out, double* density,
                            size_t capacity) {
  if (dist == nullptr || div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "dist, div and out are required");
  }
  if (!fits(density, capacity, dist->dist.size())) return too_small(dist->dist.size());
  return guarded([&] {
    divrisk::PrimalOptions primal;
    if (options != nullptr) {
      if (!(options->objective_tol > 0.0)) {
        throw divrisk::Error(divrisk::ErrorCode::invalid_parameter,
                             "objective_tol must be positive");
      }
      primal.objective_tol = options->objective_tol;
    }
    const auto eval = divrisk::evaluate_primal(dist->dist, div->spec, beta, primal);
    const double a_bar = divrisk::alpha_bar(div->spec, beta);
    divrisk_risk_result r{};
    r.value = eval.value;
    r.has_optimizer = eval.t_star.has_value() ? 1 : 0;
    r.t_star = eval.t_star.value_or(0.0);
    r.mu_star = eval.mu_star.value_or(0.0);
    r.attained = eval.attained ? 1 : 0;
    r.residual_mean = eval.residuals[0];
    r.residual_divergence = eval.residuals[1];
    r.attainment_guaranteed = divrisk::is_attained(dist->dist, div->spec, beta) ? 1 : 0;
    r.alpha_bar = a_bar;
    r.avar_at_alpha_bar = divrisk::avar(dist->dist, a_bar);
    *out = r;
    copy_out(eval.density, density);
  });
}

divrisk_status divrisk_alpha_bar(const divrisk_divergence* div, double beta,
                                 double* out) {
  if (div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "div and out are required");
  }
  return guarded([&] { *out = divrisk::alpha_bar(div->spec, beta); });
}

divrisk_status divrisk_dual(const divrisk_distribution* dist,
                            const divrisk_divergence* div, double beta,
                            divrisk_dual_result* out, double* z, size_t capacity) {
  if (dist == nullptr || div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "dist, div and out are required");
  }
  if (!fits(z, capacity, dist->dist.size())) return too_small(dist->dist.size());
  return guarded([&] {
    const auto sol = divrisk::solve_dual(dist->dist, div->spec, beta);
    *out = divrisk_dual_result{sol.objective, sol.mean_slack, sol.divergence_slack,
                               static_cast<divrisk_dual_source>(sol.source)};
    copy_out(sol.z, z);
  });
}

divrisk_status divrisk_brute_force_dual(const divrisk_distribution* dist,
                                        const divrisk_divergence* div, double beta,
                                        double* out) {
  if (dist == nullptr || div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "dist, div and out are required");
  }
  return guarded([&] { *out = divrisk::brute_force_dual(dist->dist, div->spec, beta); });
}

divrisk_status divrisk_norms(const divrisk_distribution* dist,
                             const divrisk_divergence* div, double beta,
                             divrisk_norm_result* out) {
  if (dist == nullptr || div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "dist, div and out are required");
  }
  return guarded([&] {
    const auto report = divrisk::norm_report(dist->dist, div->spec, beta);
    *out = divrisk_norm_result{report.phi_beta_norm, report.luxemburg, report.orlicz,
                               report.dual_norm.has_value() ? 1 : 0,
                               report.dual_norm.value_or(0.0)};
  });
}

divrisk_status divrisk_dual_norm(const divrisk_distribution* z_dist,
                                 const divrisk_divergence* div, double beta,
                                 divrisk_dual_norm_result* out, double* witness,
                                 size_t capacity) {
  if (z_dist == nullptr || div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "z_dist, div and out are required");
  }
  if (!fits(witness, capacity, z_dist->dist.size())) {
    return too_small(z_dist->dist.size());
  }
  return guarded([&] {
    const auto r = divrisk::dual_norm_detail(z_dist->dist, div->spec, beta);
    *out = divrisk_dual_norm_result{r.value, r.lambda.has_value() ? 1 : 0,
                                    r.lambda.value_or(0.0), r.level.value_or(0.0)};
    copy_out(r.witness, witness);
  });
}

divrisk_status divrisk_panel_parse_csv(const char* text, divrisk_panel** out) {
  if (text == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "text and out are required");
  }
  *out = nullptr;
  return guarded([&] { *out = new divrisk_panel{divrisk::parse_panel_csv(text)}; });
}

divrisk_status divrisk_panel_load_csv(const char* path, divrisk_panel** out) {
  if (path == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "path and out are required");
  }
  *out = nullptr;
  return guarded([&] { *out = new divrisk_panel{divrisk::load_panel_csv(path)}; });
}

void divrisk_panel_destroy(divrisk_panel* panel) { delete panel; }

size_t divrisk_panel_assets(const divrisk_panel* panel) {
  return panel == nullptr ? 0 : panel->panel.assets();
}

size_t divrisk_panel_scenarios(const divrisk_panel* panel) {
  return panel == nullptr ? 0 : panel->panel.scenarios();
}

const char* divrisk_panel_asset_name(const divrisk_panel* panel, size_t index) {
  if (panel == nullptr || index >= panel->panel.assets()) return nullptr;
  return panel->panel.names()[index].c_str();
}

divrisk_status divrisk_portfolio(const divrisk_panel* panel,
                                 const divrisk_divergence* div, double beta,
                                 divrisk_portfolio_result* out, double* weights,
                                 size_t capacity) {
  if (panel == nullptr || div == nullptr || out == nullptr) {
    return fail(DIVRISK_ERR_NULL_ARGUMENT, "panel, div and out are required");
  }
  if (!fits(weights, capacity, panel->panel.assets())) {
    return too_small(panel->panel.assets());
  }
  return guarded([&] {
    const auto sol = divrisk::minimize_portfolio_risk(panel->panel, div->spec, beta);
    *out = divrisk_portfolio_result{sol.risk,
                                    sol.t_star.has_value() ? 1 : 0,
                                    sol.t_star.value_or(0.0),
                                    sol.mu_star.value_or(0.0),
                                    sol.iterations,
                                    sol.converged ? 1 : 0};
    copy_out(sol.weights, weights);
  });
}

}  // extern "C"
