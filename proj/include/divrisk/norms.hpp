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

#ifndef DIVRISK_NORMS_HPP
#define DIVRISK_NORMS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "divrisk/divergence.hpp"
#include "divrisk/empirical.hpp"

namespace divrisk {

/// Which member of a complementary Young pair generates a norm.
enum class YoungSide { phi, psi };

/// ||X||_{phi,beta} = rho_{phi,beta}(|X|).
double phi_beta_norm(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
                     double beta);

/// ||X||_{Phi,beta}: the risk norm with the Young function Phi in place of phi.
double young_beta_norm(const EmpiricalDistribution& dist, const YoungPair& pair,
                       double beta);

/// inf { lambda > 0 : E F(|X|/lambda) <= 1 } with F = Phi or Psi.
double luxemburg_norm(const EmpiricalDistribution& dist, const YoungPair& pair,
                      YoungSide side = YoungSide::phi);

/// inf_{k > 0} k (1 + E F(|X|/k)) with F = Phi or Psi. With F = Psi this is
/// the Orlicz norm sup { E XZ : E Phi(|Z|) <= 1 }; with F = Phi it is the
/// Orlicz norm taken over E Psi(|Z|) <= 1.
double amemiya_norm(const EmpiricalDistribution& dist, const YoungPair& pair,
                    YoungSide side);

/// inf_t t (1 + E Psi(|X|/t)).
double orlicz_norm(const EmpiricalDistribution& dist, const YoungPair& pair);

/// c_Z(lambda): the c in [essinf |Z|/lambda, 1] with E max{c, |Z|/lambda} = 1.
/// Requires lambda >= E|Z| > 0; throws domain otherwise.
double dual_norm_level(const EmpiricalDistribution& z_dist, double lambda);

struct DualNormResult {
  double value = 0.0;
  /// lambda* and c_Z(lambda*); absent when value = E|Z| already satisfies the
  /// budget or Z = 0.
  std::optional<double> lambda;
  std::optional<double> level;
  /// max{c_Z(lambda*), |Z|/lambda*}, or |Z|/E|Z| in the first case.
  std::vector<double> witness;
};

/// Dual norm of ||.||_{phi,beta} at Z. Throws unsupported_divergence unless
/// the divergence satisfies the Delta2 condition.
DualNormResult dual_norm_detail(const EmpiricalDistribution& z_dist,
                                const DivergenceSpec& spec, double beta);

double dual_norm(const EmpiricalDistribution& z_dist, const DivergenceSpec& spec,
                 double beta);

struct NormReport {
  double phi_beta_norm = 0.0;
  double luxemburg = 0.0;  // Phi side
  double orlicz = 0.0;     // Psi form
  std::optional<double> dual_norm;
  std::vector<std::pair<double, double>> c_lambda_trace;
};

/// Collects the norms of X. dual_norm treats the same sample as Z and is
/// present only for Delta2 divergences; trace_points > 0 samples
/// (lambda, c_Z(lambda)) on [E|X|, 4 E|X|].
NormReport norm_report(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
                       double beta, int trace_points = 0);

}  // namespace divrisk

#endif  // DIVRISK_NORMS_HPP
