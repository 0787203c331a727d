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

#ifndef DIVRISK_PORTFOLIO_HPP
#define DIVRISK_PORTFOLIO_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divrisk/divergence.hpp"
#include "divrisk/empirical.hpp"

namespace divrisk {

/// Joint loss scenarios: losses(s, i) is the loss of asset i in scenario s.
class AssetPanel {
 public:
  /// `losses` is row-major, one row per scenario. Empty probabilities mean
  /// equally likely scenarios; otherwise they must be positive and are
  /// renormalised. Throws panel on any shape or value problem.
  static AssetPanel from_rows(std::vector<std::string> names,
                              std::vector<std::vector<double>> losses,
                              std::vector<double> probs = {});

  std::size_t assets() const noexcept { return names_.size(); }
  std::size_t scenarios() const noexcept { return probs_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  double loss(std::size_t scenario, std::size_t asset) const {
    return losses_[scenario * assets() + asset];
  }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Loss of the portfolio w, sum_i w_i X_i, as a distribution over scenarios.
  EmpiricalDistribution combine(std::span<const double> w) const;
  /// Column i as a distribution.
  EmpiricalDistribution asset(std::size_t i) const;

 private:
  AssetPanel() = default;

  std::vector<std::string> names_;
  std::vector<double> losses_;
  std::vector<double> probs_;
};

/// Header row of asset names, then one row per scenario. A column headed "p"
/// holds scenario probabilities.
AssetPanel parse_panel_csv(const std::string& text);
AssetPanel load_panel_csv(const std::string& path);

struct PortfolioOptions {
  int max_iter = 20000;
  /// Step k moves eta0 / k along the normalised subgradient.
  double eta0 = 0.5;
  /// Stop once the best risk improved by less than min_gain over this many
  /// iterations.
  int window = 20;
  double min_gain = 1e-8;
};

struct PortfolioSolution {
  std::vector<double> weights;
  double risk = 0.0;
  std::optional<double> t_star;
  std::optional<double> mu_star;
  int iterations = 0;
  bool converged = false;
};

/// min over the simplex of rho_{phi,beta}(sum_i w_i X_i) by projected
/// subgradient steps, the subgradient being E[X_i Z] for the optimal density.
PortfolioSolution minimize_portfolio_risk(const AssetPanel& panel,
                                          const DivergenceSpec& spec, double beta,
                                          const PortfolioOptions& options = {});

/// Minimum of rho(X_w) over w = (u, 1 - u) on `resolution` equally spaced u
/// in [0, 1]. Needs exactly two assets.
double grid_oracle_portfolio(const AssetPanel& panel, const DivergenceSpec& spec,
                             double beta, std::size_t resolution);

/// t (beta + mu + E psi(X_w/t - mu)).
double joint_objective(const AssetPanel& panel, const DivergenceSpec& spec,
                       double beta, std::span<const double> w, double t, double mu);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace divrisk

#endif  // DIVRISK_PORTFOLIO_HPP
