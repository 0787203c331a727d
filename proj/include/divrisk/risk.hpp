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

#ifndef DIVRISK_RISK_HPP
#define DIVRISK_RISK_HPP

#include <array>
#include <optional>
#include <vector>

#include "divrisk/divergence.hpp"
#include "divrisk/empirical.hpp"

namespace divrisk {

struct PrimalOptions {
  /// Width, in log t, at which the outer golden-section search stops.
  double objective_tol = 1e-9;
};

/// rho_{phi,beta}(X) = inf_{t > 0, mu} t (beta + mu + E psi(X/t - mu)).
struct RiskEvaluation {
  double value = 0.0;
  std::optional<double> t_star;
  std::optional<double> mu_star;
  bool attained = false;
  /// Gaps 1 - E psi'(X/t - mu) and beta - E phi(psi'(X/t - mu)) at the
  /// optimiser; zero when no optimiser exists.
  std::array<double, 2> residuals{0.0, 0.0};
  /// psi'(X/t* - mu*) per atom, or the density uniform on the top atoms when
  /// the infimum is approached as t -> 0. Serves as a subgradient of rho.
  std::vector<double> density;
};

/// Throws invalid_parameter unless beta > 0.
RiskEvaluation evaluate_primal(const EmpiricalDistribution& dist,
                               const DivergenceSpec& spec, double beta,
                               const PrimalOptions& options = {});

/// t (beta + mu + E psi(X/t - mu)) at a given point.
double primal_objective(const EmpiricalDistribution& dist,
                        const DivergenceSpec& spec, double beta, double t,
                        double mu);

struct CharacterizingSolution {
  double t_star;
  double mu_star;
  double residual_mean;        // 1 - E psi'(X/t - mu)
  double residual_divergence;  // beta - E phi(psi'(X/t - mu))
  std::vector<double> density;
};

/// Solves 1 = E psi'(X/t - mu), beta = E phi(psi'(X/t - mu)) by nested
/// bisection. Returns nullopt when no root with residuals <= 1e-8 is found.
std::optional<CharacterizingSolution> solve_characterizing_equations(
    const EmpiricalDistribution& dist, const DivergenceSpec& spec, double beta);

/// Largest alpha in [0, 1) with phi(0) alpha + phi(1/(1-alpha)) (1-alpha) <= beta.
double alpha_bar(const DivergenceSpec& spec, double beta);

/// Sufficient condition for attainment: P(X = esssup X) < 1 - alpha_bar.
/// false means "not guaranteed".
bool is_attained(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
                 double beta);

/// Density 1/P(X = esssup) on the top atoms, 0 elsewhere.
std::vector<double> top_atom_density(const EmpiricalDistribution& dist);

}  // namespace divrisk

#endif  // DIVRISK_RISK_HPP
