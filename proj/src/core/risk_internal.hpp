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

#ifndef DIVRISK_SRC_CORE_RISK_INTERNAL_HPP
#define DIVRISK_SRC_CORE_RISK_INTERNAL_HPP

#include <array>
#include <vector>

#include "divrisk/divergence.hpp"
#include "divrisk/empirical.hpp"

namespace divrisk::detail {

void require_beta(double beta);

struct InnerSolution {
  double s;
  double value;  // -s + E psi((X - top)/t + s)
};

/// The primal objective rewritten around the top atom:
/// t (beta + mu + E psi(X/t - mu)) = top + t (beta - s + E psi((X - top)/t + s))
/// with s = top/t - mu.
struct ShiftedProblem {
  const EmpiricalDistribution& dist;
  const DivergenceSpec& spec;
  double top;

  double arg(std::size_t i, double t, double s) const;
  double mean_slope(double t, double s) const;
  double inner_value(double t, double s) const;
  /// Minimises the inner value over s by bisection on the slope.
  InnerSolution solve_inner(double t) const;
  /// Objective minus top at fixed t, minimised over s.
  double excess(double t, double beta) const;
  std::vector<double> density(double t, double s) const;
  std::array<double, 2> residuals(double t, double s, double beta) const;
};

}  // namespace divrisk::detail

#endif  // DIVRISK_SRC_CORE_RISK_INTERNAL_HPP
