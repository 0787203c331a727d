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

#ifndef DIVRISK_DUAL_HPP
#define DIVRISK_DUAL_HPP

#include <span>
#include <vector>

#include "divrisk/divergence.hpp"
#include "divrisk/empirical.hpp"

namespace divrisk {

enum class DualSource { characterizing_equations, projected_ascent, brute_force };

const char* to_string(DualSource source) noexcept;

/// A density Z over the atoms, feasible for E Z = 1, E phi(Z) <= beta, Z >= 0.
struct DualSolution {
  std::vector<double> z;
  double objective = 0.0;         // E XZ
  double mean_slack = 0.0;        // |E Z - 1|
  double divergence_slack = 0.0;  // beta - E phi(Z)
  DualSource source = DualSource::characterizing_equations;
};

struct DualOptions {
  /// When false, skips every shortcut and runs projected ascent from Z = 1.
  bool use_characterizing_equations = true;
};

/// sup { E XZ : Z >= 0, E Z = 1, E phi(Z) <= beta }.
///
/// Tries Z* = psi'(X/t* - mu*) from the characterizing equations first and
/// falls back to projected ascent over q = p*z when no root is found.
DualSolution solve_dual(const EmpiricalDistribution& dist,
                        const DivergenceSpec& spec, double beta,
                        const DualOptions& options = {});

/// Z*_i = psi'(x_i/t - mu). Throws stale_multiplier when (t, mu) leave either
/// characterizing residual above 1e-6.
DualSolution optimal_density(const EmpiricalDistribution& dist,
                             const DivergenceSpec& spec, double beta,
                             double t_star, double mu_star);

/// Grid search over the feasible densities, for at most three atoms.
/// Throws oracle_size for larger inputs.
double brute_force_dual(const EmpiricalDistribution& dist,
                        const DivergenceSpec& spec, double beta);

struct BallPoint {
  double expectation;  // E_Q X
  bool feasible;       // D_phi(Q || P) <= beta
};

/// Restates a measure q on the atoms in divergence-ball form.
BallPoint divergence_ball_form(const EmpiricalDistribution& dist,
                               const DivergenceSpec& spec, double beta,
                               std::span<const double> q);

}  // namespace divrisk

#endif  // DIVRISK_DUAL_HPP
