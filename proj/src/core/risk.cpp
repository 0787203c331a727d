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

#include "divrisk/risk.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "divrisk/error.hpp"
#include "risk_internal.hpp"
#include "search.hpp"

namespace divrisk {

namespace detail {

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::invalid_parameter, "beta must be a positive real");
  }
}

// The inner variable is s = top/t - mu, so that every argument
// (x_i - top)/t + s stays bounded above by s even as t -> 0.
double ShiftedProblem::arg(std::size_t i, double t, double s) const {
  return (dist.atoms()[i] - top) / t + s;
}

double ShiftedProblem::mean_slope(double t, double s) const {
  double total = 0.0;
  const auto probs = dist.probs();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    total += probs[i] * spec.psi_prime(arg(i, t, s));
  }
  return total;
}

double ShiftedProblem::inner_value(double t, double s) const {
  double total = -s;
  const auto probs = dist.probs();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    total += probs[i] * spec.psi(arg(i, t, s));
  }
  return total;
}

InnerSolution ShiftedProblem::solve_inner(double t) const {
  double start = spec.unit_slope();
  if (!std::isfinite(start)) start = 0.0;

  double lo = start;
  double step = 1.0;
  int guard = 0;
  while (mean_slope(t, lo) > 1.0) {
    lo -= step;
    step *= 2.0;
    if (++guard > 200) {
      throw NumericError("mu bracket exhausted (lower side)",
                         "t=" + std::to_string(t));
    }
  }
  double hi = start + 1.0;
  step = 1.0;
  guard = 0;
  while (mean_slope(t, hi) < 1.0) {
    hi += step;
    step *= 2.0;
    if (++guard > 200) {
      throw NumericError("mu bracket exhausted (upper side)",
                         "t=" + std::to_string(t));
    }
  }
  const auto b = bisect([&](double s) { return mean_slope(t, s) >= 1.0; }, lo, hi);
  const double v_lo = inner_value(t, b.lo);
  const double v_hi = inner_value(t, b.hi);
  return v_lo <= v_hi ? InnerSolution{b.lo, v_lo} : InnerSolution{b.hi, v_hi};
}

double ShiftedProblem::excess(double t, double beta) const {
  const auto inner = solve_inner(t);
  return t * (beta + inner.value);
}

std::vector<double> ShiftedProblem::density(double t, double s) const {
  std::vector<double> z(dist.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = spec.psi_prime(arg(i, t, s));
  return z;
}

std::array<double, 2> ShiftedProblem::residuals(double t, double s,
                                                double beta) const {
  const auto z = density(t, s);
  const auto probs = dist.probs();
  double mean = 0.0;
  double div = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    mean += probs[i] * z[i];
    div += probs[i] * spec.phi(z[i]);
  }
  return {1.0 - mean, beta - div};
}

}  // namespace detail

namespace {

using detail::ShiftedProblem;

bool is_constant(const EmpiricalDistribution& dist) {
  return dist.essinf() == dist.esssup();
}

}  // namespace

std::vector<double> top_atom_density(const EmpiricalDistribution& dist) {
  const double top = dist.esssup();
  const double mass = dist.prob_at_esssup();
  std::vector<double> z(dist.size(), 0.0);
  const auto atoms = dist.atoms();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (atoms[i] == top) z[i] = 1.0 / mass;
  }
  return z;
}

RiskEvaluation evaluate_primal(const EmpiricalDistribution& dist,
                               const DivergenceSpec& spec, double beta,
                               const PrimalOptions& options) {
  detail::require_beta(beta);
  RiskEvaluation out;
  const double top = dist.esssup();
  if (is_constant(dist)) {
    out.value = top;
    out.density.assign(dist.size(), 1.0);
    return out;
  }

  const ShiftedProblem problem{dist, spec, top};
  // Any minimiser satisfies t* beta + E X <= rho <= esssup X.
  const double spread = top - dist.mean();
  const double t_hi = std::max(spread, 1e-300) / beta;
  const double t_floor = 1e-12 * std::max(spread, 1e-300);
  if (!std::isfinite(t_hi)) {
    std::ostringstream trace;
    trace << "esssup=" << top << " mean=" << dist.mean() << " beta=" << beta
          << " t_hi=" << t_hi;
    throw NumericError("t bracket overflows for this spread and beta", trace.str());
  }

  // The excess h(t) - esssup X is convex in t; push the lower end down until
  // the minimum is interior or t underflows the floor.
  // Differences below `noise` are rounding in beta + inner value, scaled by t.
  auto excess = [&](double t) { return problem.excess(t, beta); };
  const double noise = 1e-14 * spread * (1.0 + 1.0 / beta);
  auto still_falling = [&](double t) {
    return excess(t) <= excess(1.5 * t) + noise;
  };
  double t_lo = t_hi * 1e-3;
  while (t_lo > t_floor && still_falling(t_lo)) {
    t_lo = std::max(t_lo * 1e-3, t_floor);
    if (t_lo == t_floor) break;
  }
  if (t_lo <= t_floor && still_falling(t_lo)) {
    out.value = top + std::min(excess(t_lo), 0.0);
    out.attained = false;
    out.density = top_atom_density(dist);
    return out;
  }

  const auto best = detail::golden_section(
      [&](double u) { return excess(std::exp(u)); }, std::log(t_lo),
      std::log(t_hi), options.objective_tol);
  const double t_star = std::exp(best.x);
  const auto inner = problem.solve_inner(t_star);

  out.value = top + best.value;
  out.t_star = t_star;
  out.mu_star = top / t_star - inner.s;
  out.attained = true;
  out.residuals = problem.residuals(t_star, inner.s, beta);
  out.density = problem.density(t_star, inner.s);
  return out;
}

double primal_objective(const EmpiricalDistribution& dist,
                        const DivergenceSpec& spec, double beta, double t,
                        double mu) {
  detail::require_beta(beta);
  if (!(t > 0.0)) throw Error(ErrorCode::invalid_parameter, "t must be positive");
  const double top = dist.esssup();
  const ShiftedProblem problem{dist, spec, top};
  return top + t * (beta + problem.inner_value(t, top / t - mu));
}

std::optional<CharacterizingSolution> solve_characterizing_equations(
    const EmpiricalDistribution& dist, const DivergenceSpec& spec, double beta) {
  detail::require_beta(beta);
  if (is_constant(dist)) return std::nullopt;

  constexpr double kTol = 1e-8;
  const double top = dist.esssup();
  const ShiftedProblem problem{dist, spec, top};
  const double spread = top - dist.mean();
  const double t_floor = 1e-12 * spread;
  if (!std::isfinite(spread / beta)) return std::nullopt;

  struct Probe {
    double t;
    double s;
    double gap;  // E phi(Z(t)) - beta, non-increasing in t
  };
  auto probe = [&](double t) {
    const auto inner = problem.solve_inner(t);
    const auto r = problem.residuals(t, inner.s, beta);
    return Probe{t, inner.s, -r[1]};
  };

  Probe hi = probe(spread / beta);
  for (int guard = 0; hi.gap > 0.0; ++guard) {
    if (guard > 200) return std::nullopt;
    hi = probe(hi.t * 2.0);
  }
  Probe best = hi;
  Probe lo = hi;
  bool crossed = false;
  while (lo.t > t_floor) {
    lo = probe(lo.t * 0.5);
    if (std::abs(lo.gap) < std::abs(best.gap)) best = lo;
    if (lo.gap >= 0.0) {
      crossed = true;
      break;
    }
    hi = lo;
  }

  if (crossed) {
    const auto b = detail::bisect(
        [&](double u) {
          const Probe p = probe(std::exp(u));
          if (std::abs(p.gap) < std::abs(best.gap)) best = p;
          return p.gap < 0.0;
        },
        std::log(lo.t), std::log(hi.t), 200);
    (void)b;
  }

  const auto r = problem.residuals(best.t, best.s, beta);
  if (std::abs(r[0]) > kTol || std::abs(r[1]) > kTol) return std::nullopt;
  return CharacterizingSolution{best.t, top / best.t - best.s, r[0], r[1],
                                problem.density(best.t, best.s)};
}

double alpha_bar(const DivergenceSpec& spec, double beta) {
  detail::require_beta(beta);
  const double phi0 = spec.phi_at_zero();
  auto level = [&](double alpha) {
    const double tail = 1.0 - alpha;
    const double head = phi0 == 0.0 ? 0.0 : phi0 * alpha;
    return head + spec.phi(1.0 / tail) * tail;
  };
  // The level is non-decreasing in alpha and diverges as alpha -> 1.
  double hi = 0.5;
  while (!(level(hi) > beta)) {
    const double next = 1.0 - 0.5 * (1.0 - hi);
    if (next == hi || next >= 1.0) return hi;
    hi = next;
  }
  const auto b = detail::bisect([&](double a) { return level(a) > beta; }, 0.0, hi);
  return b.lo;
}

bool is_attained(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
                 double beta) {
  // Margin keeps the boundary case P = 1 - alpha_bar on the "not guaranteed"
  // side despite rounding in alpha_bar.
  constexpr double kMargin = 1e-10;
  return dist.prob_at_esssup() < 1.0 - alpha_bar(spec, beta) - kMargin;
}

}  // namespace divrisk
