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

// divrisk command-line front end. Everything numeric goes through the C API.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "divrisk/divrisk.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

enum Exit { kOk = 0, kInvalid = 1, kParse = 2, kNumeric = 3 };

int log_level() {
  const char* env = std::getenv("DIVRISK_LOG");
  if (env == nullptr) return 0;
  const std::string v = env;
  if (v == "debug" || v == "2") return 2;
  if (v == "info" || v == "1") return 1;
  return 0;
}

void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "divrisk: " << msg << '\n';
}

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void raise(divrisk_status status) {
  std::ostringstream msg;
  msg << divrisk_status_string(status) << ": " << divrisk_last_error();
  if (status == DIVRISK_ERR_PARSE) {
    if (msg.str().find("line ") == std::string::npos) {
      msg << " (line " << divrisk_last_error_line() << ", column "
          << divrisk_last_error_column() << ")";
    }
    throw Failure{kParse, msg.str()};
  }
  if (status == DIVRISK_ERR_NUMERIC) {
    const std::string trace = divrisk_last_error_trace();
    if (!trace.empty()) msg << "\ntrace: " << trace;
    throw Failure{kNumeric, msg.str()};
  }
  throw Failure{kInvalid, msg.str()};
}

void check(divrisk_status status) {
  if (status != DIVRISK_OK) raise(status);
}

// RAII holders for the opaque handles.
template <class T, void (*Destroy)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr); }
};

using Divergence = Handle<divrisk_divergence, divrisk_divergence_destroy>;
using Distribution = Handle<divrisk_distribution, divrisk_distribution_destroy>;
using Panel = Handle<divrisk_panel, divrisk_panel_destroy>;

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

// Like json::dump, but floats always carry 17 significant digits.
void write_json(std::ostream& os, const ordered_json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << ordered_json(key).dump() << ": ";
        write_json(os, value, indent, depth + 1);
      }
      os << '\n' << close << '}';
      return;
    }
    case ordered_json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) os << ", ";
        write_json(os, j[i], indent, depth + 1);
      }
      os << ']';
      return;
    }
    case ordered_json::value_t::number_float:
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

void write_text(std::ostream& os, const ordered_json& report) {
  for (const auto& [key, value] : report.items()) {
    os << key << ':';
    if (value.is_array()) {
      for (const auto& item : value) {
        os << ' ' << (item.is_number_float() ? format_number(item.get<double>())
                                             : item.is_string() ? item.get<std::string>()
                                                                : item.dump());
      }
    } else if (value.is_number_float()) {
      os << ' ' << format_number(value.get<double>());
    } else if (value.is_string()) {
      os << ' ' << value.get<std::string>();
    } else {
      os << ' ' << value.dump();
    }
    os << '\n';
  }
}

ordered_json optional_number(int present, double v) {
  return present ? ordered_json(v) : ordered_json(nullptr);
}

const char* source_name(divrisk_dual_source s) {
  switch (s) {
    case DIVRISK_DUAL_CHARACTERIZING_EQUATIONS: return "characterizing_equations";
    case DIVRISK_DUAL_PROJECTED_ASCENT: return "projected_ascent";
    case DIVRISK_DUAL_BRUTE_FORCE: return "brute_force";
  }
  return "unknown";
}

struct RunConfig {
  std::string command;
  std::string divergence;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::string input;
  std::string output = "json";
  std::optional<double> tol;
};

void validate(const RunConfig& cfg) {
  const bool needs_divergence = cfg.command != "avar";
  if (needs_divergence) {
    if (cfg.divergence.empty()) {
      throw Failure{kInvalid, "--divergence is required for " + cfg.command};
    }
    if (!cfg.beta) throw Failure{kInvalid, "--beta is required for " + cfg.command};
  }
  if (cfg.beta && !(*cfg.beta > 0.0 && std::isfinite(*cfg.beta))) {
    throw Failure{kInvalid, "--beta must be a positive real"};
  }
  if (cfg.command == "avar") {
    if (!cfg.alpha) throw Failure{kInvalid, "--alpha is required for avar"};
  }
  if (cfg.alpha && !(*cfg.alpha >= 0.0 && *cfg.alpha < 1.0)) {
    throw Failure{kInvalid, "--alpha must lie in [0, 1)"};
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) {
    throw Failure{kInvalid, "--tol must be positive"};
  }
}

std::vector<double> samples_of(const divrisk_distribution* dist) {
  std::vector<double> atoms(divrisk_distribution_size(dist));
  check(divrisk_distribution_atoms(dist, atoms.data(), nullptr, atoms.size()));
  return atoms;
}

ordered_json run_risk(const RunConfig& cfg, const divrisk_distribution* dist,
                      const divrisk_divergence* div) {
  divrisk_options options;
  divrisk_options_init(&options);
  if (cfg.tol) options.objective_tol = *cfg.tol;
  std::vector<double> density(divrisk_distribution_size(dist));
  divrisk_risk_result r;
  check(divrisk_risk(dist, div, *cfg.beta, &options, &r, density.data(),
                     density.size()));
  ordered_json out;
  out["value"] = r.value;
  out["attained"] = r.attained != 0;
  out["t_star"] = optional_number(r.has_optimizer, r.t_star);
  out["mu_star"] = optional_number(r.has_optimizer, r.mu_star);
  out["residual_mean"] = r.residual_mean;
  out["residual_divergence"] = r.residual_divergence;
  out["attainment_guaranteed"] = r.attainment_guaranteed != 0;
  out["alpha_bar"] = r.alpha_bar;
  out["avar_lower_bound"] = r.avar_at_alpha_bar;
  out["density"] = density;
  return out;
}

ordered_json run_dual(const RunConfig& cfg, const divrisk_distribution* dist,
                      const divrisk_divergence* div) {
  std::vector<double> z(divrisk_distribution_size(dist));
  divrisk_dual_result r;
  check(divrisk_dual(dist, div, *cfg.beta, &r, z.data(), z.size()));
  ordered_json out;
  out["objective"] = r.objective;
  out["z"] = z;
  out["mean_slack"] = r.mean_slack;
  out["divergence_slack"] = r.divergence_slack;
  out["source"] = source_name(r.source);
  return out;
}

ordered_json run_norm(const RunConfig& cfg, const divrisk_distribution* dist,
                      const divrisk_divergence* div) {
  divrisk_norm_result r;
  check(divrisk_norms(dist, div, *cfg.beta, &r));
  ordered_json out;
  out["phi_beta_norm"] = r.phi_beta_norm;
  out["luxemburg"] = r.luxemburg;
  out["orlicz"] = r.orlicz;
  out["dual_norm"] = optional_number(r.has_dual_norm, r.dual_norm);
  return out;
}

ordered_json run_dual_norm(const RunConfig& cfg, const divrisk_distribution* dist,
                           const divrisk_divergence* div) {
  std::vector<double> witness(divrisk_distribution_size(dist));
  divrisk_dual_norm_result r;
  check(divrisk_dual_norm(dist, div, *cfg.beta, &r, witness.data(), witness.size()));
  ordered_json out;
  out["value"] = r.value;
  out["lambda"] = optional_number(r.has_lambda, r.lambda);
  out["level"] = optional_number(r.has_lambda, r.level);
  out["witness"] = witness;
  return out;
}

ordered_json run_portfolio(const RunConfig& cfg, const divrisk_divergence* div) {
  Panel panel;
  check(divrisk_panel_load_csv(cfg.input.c_str(), &panel.ptr));
  const std::size_t n = divrisk_panel_assets(panel.ptr);
  log(1, "panel: " + std::to_string(n) + " assets, " +
             std::to_string(divrisk_panel_scenarios(panel.ptr)) + " scenarios");
  std::vector<double> weights(n);
  divrisk_portfolio_result r;
  check(divrisk_portfolio(panel.ptr, div, *cfg.beta, &r, weights.data(), n));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.emplace_back(divrisk_panel_asset_name(panel.ptr, i));
  }
  log(2, "portfolio iterations: " + std::to_string(r.iterations));
  ordered_json out;
  out["assets"] = names;
  out["weights"] = weights;
  out["risk"] = r.risk;
  out["t_star"] = optional_number(r.has_optimizer, r.t_star);
  out["mu_star"] = optional_number(r.has_optimizer, r.mu_star);
  out["iterations"] = r.iterations;
  out["converged"] = r.converged != 0;
  return out;
}

ordered_json run(const RunConfig& cfg) {
  validate(cfg);
  ordered_json report;
  report["command"] = cfg.command;
  if (!cfg.divergence.empty()) report["divergence"] = cfg.divergence;
  if (cfg.beta) report["beta"] = *cfg.beta;
  if (cfg.alpha) report["alpha"] = *cfg.alpha;

  Divergence div;
  if (!cfg.divergence.empty()) {
    check(divrisk_divergence_create(cfg.divergence.c_str(), &div.ptr));
  }

  const auto started = std::chrono::steady_clock::now();
  ordered_json body;
  if (cfg.command == "portfolio") {
    body = run_portfolio(cfg, div.ptr);
  } else {
    Distribution dist;
    check(divrisk_distribution_load_csv(cfg.input.c_str(), &dist.ptr));
    report["n"] = divrisk_distribution_size(dist.ptr);
    log(1, "loaded " + std::to_string(divrisk_distribution_size(dist.ptr)) +
               " samples from " + cfg.input);
    if (log_level() >= 2) {
      std::ostringstream atoms;
      for (double x : samples_of(dist.ptr)) atoms << ' ' << format_number(x);
      log(2, "atoms:" + atoms.str());
    }
    if (cfg.command == "risk") {
      body = run_risk(cfg, dist.ptr, div.ptr);
    } else if (cfg.command == "dual") {
      body = run_dual(cfg, dist.ptr, div.ptr);
    } else if (cfg.command == "norm") {
      body = run_norm(cfg, dist.ptr, div.ptr);
    } else if (cfg.command == "dualnorm") {
      body = run_dual_norm(cfg, dist.ptr, div.ptr);
    } else {
      double v = 0.0;
      check(divrisk_avar(dist.ptr, *cfg.alpha, &v));
      body["value"] = v;
    }
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - started);
  log(1, cfg.command + " finished in " + std::to_string(elapsed.count()) + " ms");
  for (auto& [key, value] : body.items()) report[key] = value;
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divergence risk measures on empirical samples", "divrisk"};
  RunConfig cfg;
  app.set_version_flag("--version", std::string(divrisk_version()));
  app.add_option("--command", cfg.command, "Operation to run")
      ->required()
      ->check(CLI::IsMember({"risk", "dual", "norm", "dualnorm", "avar", "portfolio"}));
  app.add_option("--divergence", cfg.divergence, "kl | chi2 | power:<p>");
  app.add_option("--beta", cfg.beta, "Divergence budget, > 0");
  app.add_option("--alpha", cfg.alpha, "AVaR level in [0, 1)");
  app.add_option("--input", cfg.input, "CSV file of samples or asset losses")
      ->required();
  app.add_option("--output", cfg.output, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tol", cfg.tol, "Outer search width in log t");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    const ordered_json report = run(cfg);
    if (cfg.output == "text") {
      write_text(std::cout, report);
    } else {
      write_json(std::cout, report, 2, 0);
      std::cout << '\n';
    }
    return kOk;
  } catch (const Failure& f) {
    std::cerr << "divrisk: " << f.message << '\n';
    return f.exit_code;
  }
}
