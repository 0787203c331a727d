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

#include "divrisk/norms.hpp"

#include <algorithm>
#include <cmath>

#include "divrisk/error.hpp"
#include "divrisk/risk.hpp"
#include "risk_internal.hpp"
#include "search.hpp"

namespace divrisk {

namespace {

// F, F' and the conjugate F* for one member of the Young pair.
struct YoungMember {
  const YoungPair& pair;
  YoungSide side;

  double value(double y) const {
    return side == YoungSide::phi ? pair.Phi(y) : pair.Psi(y);
  }
  double slope(double y) const {
    const auto& f = pair.as_divergence();
    return side == YoungSide::phi ? f.phi_prime(y) : f.psi_prime(y);
  }
  double conjugate(double v) const {
    return side == YoungSide::phi ? pair.Psi(v) : pair.Phi(v);
  }
};

std::vector<double> magnitudes(const EmpiricalDistribution& dist) {
  std::vector<double> a(dist.size());
  const auto atoms = dist.atoms();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(atoms[i]);
  return a;
}

double weighted_sum(std::span<const double> p, const std::vector<double>& a,
                    const auto& f) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += p[i] * f(a[i]);
  return total;
}

}  // namespace

double phi_beta_norm(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
                     double beta) {
  return evaluate_primal(dist.abs(), spec, beta).value;
}

double young_beta_norm(const EmpiricalDistribution& dist, const YoungPair& pair,
                       double beta) {
  return evaluate_primal(dist.abs(), pair.as_divergence(), beta).value;
}

double luxemburg_norm(const EmpiricalDistribution& dist, const YoungPair& pair,
                      YoungSide side) {
  const YoungMember f{pair, side};
  const auto a = magnitudes(dist);
  const auto p = dist.probs();
  const double top = *std::max_element(a.begin(), a.end());
  if (top == 0.0) return 0.0;

  auto level = [&](double lambda) {
    return weighted_sum(p, a, [&](double v) { return f.value(v / lambda); });
  };
  double hi = top;
  for (int k = 0; level(hi) > 1.0; ++k) {
    if (k > 2000) throw NumericError("Luxemburg bracket exhausted", "upper side");
    hi *= 2.0;
  }
  double lo = 0.5 * hi;
  for (int k = 0; level(lo) <= 1.0; ++k) {
    if (k > 2000) throw NumericError("Luxemburg bracket exhausted", "lower side");
    lo *= 0.5;
  }
  return detail::bisect([&](double l) { return level(l) <= 1.0; }, lo, hi).hi;
}

double amemiya_norm(const EmpiricalDistribution& dist, const YoungPair& pair,
                    YoungSide side) {
  const YoungMember f{pair, side};
  const auto a = magnitudes(dist);
  const auto p = dist.probs();
  const double top = *std::max_element(a.begin(), a.end());
  if (top == 0.0) return 0.0;

  auto value = [&](double k) {
    return k * (1.0 + weighted_sum(p, a, [&](double v) { return f.value(v / k); }));
  };
  // Minus the derivative of value(k): E F*(F'(|X|/k)) - 1, non-increasing in k.
  auto gap = [&](double k) {
    return weighted_sum(p, a, [&](double v) { return f.conjugate(f.slope(v / k)); }) -
           1.0;
  };
  double hi = top;
  for (int k = 0; gap(hi) > 0.0; ++k) {
    if (k > 2000) throw NumericError("Orlicz bracket exhausted", "upper side");
    hi *= 2.0;
  }
  double lo = hi;
  for (int k = 0; gap(lo) < 0.0; ++k) {
    if (k > 2000) throw NumericError("Orlicz bracket exhausted", "lower side");
    lo *= 0.5;
  }
  if (lo == hi) return value(hi);
  const auto best = detail::golden_section(
      [&](double u) { return value(std::exp(u)); }, std::log(lo), std::log(hi),
      1e-12);
  return std::min({best.value, value(lo), value(hi)});
}

double orlicz_norm(const EmpiricalDistribution& dist, const YoungPair& pair) {
  return amemiya_norm(dist, pair, YoungSide::psi);
}

double dual_norm_level(const EmpiricalDistribution& z_dist, double lambda) {
  const auto a = magnitudes(z_dist);
  const auto p = z_dist.probs();
  const double mean = weighted_sum(p, a, [](double v) { return v; });
  // A lambda a few ulps under the mean is rounding, not a domain error.
  if (!(mean > 0.0) || !(lambda >= mean * (1.0 - 1e-12)) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::domain, "c_Z(lambda) needs lambda >= E|Z| > 0");
  }
  lambda = std::max(lambda, mean);
  const auto [lo_it, hi_it] = std::minmax_element(a.begin(), a.end());
  if (*lo_it == *hi_it) return 1.0;

  auto level = [&](double c) {
    return weighted_sum(p, a, [&](double v) { return std::max(c, v / lambda); });
  };
  const double floor = *lo_it / lambda;
  if (level(floor) >= 1.0) return floor;
  const auto b = detail::bisect([&](double c) { return level(c) >= 1.0; }, floor, 1.0);
  return std::abs(level(b.lo) - 1.0) <= std::abs(level(b.hi) - 1.0) ? b.lo : b.hi;
}

DualNormResult dual_norm_detail(const EmpiricalDistribution& z_dist,
                                const DivergenceSpec& spec, double beta) {
  detail::require_beta(beta);
  if (!spec.delta2()) {
    throw Error(ErrorCode::unsupported_divergence,
                "dual norm requires a divergence satisfying Delta2");
  }
  const auto a = magnitudes(z_dist);
  const auto p = z_dist.probs();
  const double mean = weighted_sum(p, a, [](double v) { return v; });
  DualNormResult out;
  if (mean == 0.0) {
    out.witness.assign(a.size(), 0.0);
    return out;
  }
  if (weighted_sum(p, a, [&](double v) { return spec.phi(v / mean); }) <= beta) {
    out.value = mean;
    for (double v : a) out.witness.push_back(v / mean);
    return out;
  }

  auto budget = [&](double lambda) {
    const double c = dual_norm_level(z_dist, lambda);
    return weighted_sum(p, a, [&](double v) { return spec.phi(std::max(c, v / lambda)); });
  };
  double hi = 2.0 * mean;
  for (int k = 0; budget(hi) > beta; ++k) {
    if (k > 2000) throw NumericError("dual norm bracket exhausted", "upper side");
    hi *= 2.0;
  }
  const double lambda =
      detail::bisect([&](double l) { return budget(l) <= beta; }, mean, hi).hi;
  const double c = dual_norm_level(z_dist, lambda);
  out.value = lambda;
  out.lambda = lambda;
  out.level = c;
  for (double v : a) out.witness.push_back(std::max(c, v / lambda));
  return out;
}

double dual_norm(const EmpiricalDistribution& z_dist, const DivergenceSpec& spec,
                 double beta) {
  return dual_norm_detail(z_dist, spec, beta).value;
}

NormReport norm_report(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
                       double beta, int trace_points) {
  NormReport report;
  report.phi_beta_norm = phi_beta_norm(dist, spec, beta);
  const auto pair = young_pair(spec);
  report.luxemburg = luxemburg_norm(dist, pair, YoungSide::phi);
  report.orlicz = orlicz_norm(dist, pair);
  if (spec.delta2()) {
    report.dual_norm = dual_norm(dist, spec, beta);
    const double mean = dist.expect([](double v) { return std::abs(v); });
    if (mean > 0.0) {
      for (int k = 0; k < trace_points; ++k) {
        const double frac = trace_points == 1 ? 0.0 : double(k) / (trace_points - 1);
        const double lambda = mean * (1.0 + 3.0 * frac);
        report.c_lambda_trace.emplace_back(lambda, dual_norm_level(dist, lambda));
      }
    }
  }
  return report;
}

}  // namespace divrisk
