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

#include "divrisk/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "csv.hpp"
#include "divrisk/error.hpp"
#include "divrisk/risk.hpp"
#include "risk_internal.hpp"
#include "simplex.hpp"

namespace divrisk {

AssetPanel AssetPanel::from_rows(std::vector<std::string> names,
                                 std::vector<std::vector<double>> losses,
                                 std::vector<double> probs) {
  if (names.empty()) throw Error(ErrorCode::panel, "panel has no assets");
  if (losses.empty()) throw Error(ErrorCode::panel, "panel has no scenarios");
  if (!probs.empty() && probs.size() != losses.size()) {
    throw Error(ErrorCode::panel, "one probability per scenario required");
  }
  AssetPanel panel;
  panel.losses_.reserve(losses.size() * names.size());
  for (std::size_t s = 0; s < losses.size(); ++s) {
    if (losses[s].size() != names.size()) {
      std::ostringstream msg;
      msg << "scenario " << s + 1 << " has " << losses[s].size() << " losses for "
          << names.size() << " assets";
      throw Error(ErrorCode::panel, msg.str());
    }
    for (double v : losses[s]) {
      if (!std::isfinite(v)) throw Error(ErrorCode::panel, "non-finite loss");
      panel.losses_.push_back(v);
    }
  }
  if (probs.empty()) {
    probs.assign(losses.size(), 1.0 / static_cast<double>(losses.size()));
  } else {
    double total = 0.0;
    for (double v : probs) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::panel, "scenario probabilities must be positive");
      }
      total += v;
    }
    for (double& v : probs) v /= total;
  }
  panel.names_ = std::move(names);
  panel.probs_ = std::move(probs);
  return panel;
}

EmpiricalDistribution AssetPanel::combine(std::span<const double> w) const {
  if (w.size() != assets()) {
    throw Error(ErrorCode::panel, "weight vector length differs from asset count");
  }
  std::vector<double> x(scenarios(), 0.0);
  for (std::size_t s = 0; s < scenarios(); ++s) {
    for (std::size_t i = 0; i < assets(); ++i) x[s] += w[i] * loss(s, i);
  }
  return EmpiricalDistribution::from_weighted(x, probs_);
}

EmpiricalDistribution AssetPanel::asset(std::size_t i) const {
  if (i >= assets()) throw Error(ErrorCode::panel, "asset index out of range");
  std::vector<double> w(assets(), 0.0);
  w[i] = 1.0;
  return combine(w);
}

AssetPanel parse_panel_csv(const std::string& text) {
  const auto rows = detail::split_csv(text);
  if (rows.empty()) throw Error(ErrorCode::empty_data, "panel file is empty");
  const auto& header = rows.front();
  std::vector<std::string> names;
  std::optional<std::size_t> p_col;
  for (std::size_t c = 0; c < header.fields.size(); ++c) {
    const auto& name = header.fields[c].text;
    if (name.empty()) {
      std::ostringstream msg;
      msg << "line " << header.line << ", column " << header.fields[c].column
          << ": empty column name";
      throw ParseError(msg.str(), header.line, header.fields[c].column);
    }
    if (name == "p") {
      if (p_col) {
        throw ParseError("line " + std::to_string(header.line) +
                             ": duplicate probability column",
                         header.line, header.fields[c].column);
      }
      p_col = c;
    } else {
      names.push_back(name);
    }
  }
  if (names.empty()) throw Error(ErrorCode::panel, "panel has no asset columns");
  if (rows.size() == 1) throw Error(ErrorCode::empty_data, "panel has no scenarios");

  std::vector<std::vector<double>> losses;
  std::vector<double> probs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.fields.size()) {
      std::ostringstream msg;
      msg << "line " << row.line << ", column 1: expected " << header.fields.size()
          << " fields, got " << row.fields.size();
      throw ParseError(msg.str(), row.line, 1);
    }
    std::vector<double> values;
    for (std::size_t c = 0; c < row.fields.size(); ++c) {
      const double v = detail::parse_number(row.fields[c], row.line);
      if (p_col && c == *p_col) {
        if (!(v > 0.0)) {
          std::ostringstream msg;
          msg << "line " << row.line << ", column " << row.fields[c].column
              << ": probability must be positive";
          throw ParseError(msg.str(), row.line, row.fields[c].column);
        }
        probs.push_back(v);
      } else {
        values.push_back(v);
      }
    }
    losses.push_back(std::move(values));
  }
  return AssetPanel::from_rows(std::move(names), std::move(losses), std::move(probs));
}

AssetPanel load_panel_csv(const std::string& path) {
  return parse_panel_csv(detail::read_file(path));
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::dimension, "cannot project an empty vector");
  return detail::project_to_simplex(v);
}

double joint_objective(const AssetPanel& panel, const DivergenceSpec& spec,
                       double beta, std::span<const double> w, double t, double mu) {
  return primal_objective(panel.combine(w), spec, beta, t, mu);
}

PortfolioSolution minimize_portfolio_risk(const AssetPanel& panel,
                                          const DivergenceSpec& spec, double beta,
                                          const PortfolioOptions& options) {
  detail::require_beta(beta);
  const std::size_t n = panel.assets();
  const auto p = panel.probs();

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  PortfolioSolution best;
  best.weights = w;
  best.risk = std::numeric_limits<double>::infinity();
  std::vector<double> history;

  int k = 1;
  for (; k <= options.max_iter; ++k) {
    const auto eval = evaluate_primal(panel.combine(w), spec, beta);
    if (eval.value < best.risk) {
      best.risk = eval.value;
      best.weights = w;
    }
    history.push_back(best.risk);
    const double step = options.eta0 / k;
    if (n == 1) {
      best.converged = true;
      break;
    }
    if (static_cast<int>(history.size()) > options.window &&
        history[history.size() - 1 - options.window] - best.risk < options.min_gain) {
      best.converged = true;
      break;
    }

    // d rho / d w_i = E[X_i Z] at the current optimal density.
    std::vector<double> g(n, 0.0);
    for (std::size_t s = 0; s < panel.scenarios(); ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        g[i] += p[s] * panel.loss(s, i) * eval.density[s];
      }
    }
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= static_cast<double>(n);
    double norm = 0.0;
    for (double& v : g) {
      v -= mean;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      best.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] -= step * g[i] / norm;
    w = detail::project_to_simplex(w);
  }
  best.iterations = std::min(k, options.max_iter);

  const auto final_eval = evaluate_primal(panel.combine(best.weights), spec, beta);
  best.risk = final_eval.value;
  best.t_star = final_eval.t_star;
  best.mu_star = final_eval.mu_star;
  return best;
}

double grid_oracle_portfolio(const AssetPanel& panel, const DivergenceSpec& spec,
                             double beta, std::size_t resolution) {
  detail::require_beta(beta);
  if (panel.assets() != 2) {
    throw Error(ErrorCode::panel, "grid oracle needs exactly two assets");
  }
  if (resolution < 2) {
    throw Error(ErrorCode::invalid_parameter, "grid resolution must be at least 2");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < resolution; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(resolution - 1);
    const double w[2] = {u, 1.0 - u};
    best = std::min(best, evaluate_primal(panel.combine(w), spec, beta).value);
  }
  return best;
}

}  // namespace divrisk
