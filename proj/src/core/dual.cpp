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

#include "divrisk/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "divrisk/error.hpp"
#include "divrisk/risk.hpp"
#include "risk_internal.hpp"
#include "search.hpp"
#include "simplex.hpp"

namespace divrisk {

const char* to_string(DualSource source) noexcept {
  switch (source) {
    case DualSource::characterizing_equations: return "characterizing-equations";
    case DualSource::projected_ascent: return "projected-ascent";
    case DualSource::brute_force: return "brute-force";
  }
  return "unknown";
}

namespace {

DualSolution describe(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
                      double beta, std::vector<double> z, DualSource source) {
  const auto atoms = dist.atoms();
  const auto probs = dist.probs();
  double mean = 0.0;
  double div = 0.0;
  double obj = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    mean += probs[i] * z[i];
    div += probs[i] * spec.phi(z[i]);
    obj += probs[i] * atoms[i] * z[i];
  }
  return {std::move(z), obj, std::abs(mean - 1.0), beta - div, source};
}

// Mass below this is treated as sitting on the boundary q_i = 0.
constexpr double kNegligible = 1e-12;

// Work in q = p * z, which lives on the probability simplex.
class BallProblem {
 public:
  BallProblem(const EmpiricalDistribution& dist, const DivergenceSpec& spec,
              double beta)
      : x_(dist.atoms()), p_(dist.probs()), spec_(spec), beta_(beta) {}

  double objective(const std::vector<double>& q) const {
    double v = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) v += q[i] * x_[i];
    return v;
  }

  double divergence(const std::vector<double>& q) const {
    double v = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) v += p_[i] * spec_.phi(q[i] / p_[i]);
    return v;
  }

  bool feasible(const std::vector<double>& q) const { return divergence(q) <= beta_; }

  std::vector<double> mix(const std::vector<double>& q, double theta) const {
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      out[i] = (1.0 - theta) * q[i] + theta * p_[i];
    }
    return out;
  }

  // Pulls q toward p until the divergence budget holds.
  std::vector<double> restore(const std::vector<double>& q) const {
    if (feasible(q)) return q;
    const auto b = detail::bisect([&](double th) { return feasible(mix(q, th)); },
                                  0.0, 1.0, 200);
    return mix(q, b.hi);
  }

  // Steps back along the divergence gradient onto the budget, which loses far
  // less objective than mixing toward p when the boundary is curved.
  std::vector<double> retract(const std::vector<double>& q) const {
    if (feasible(q)) return q;
    const auto m = metric(q);
    std::vector<double> normal(q.size(), 0.0);
    std::vector<bool> support(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      support[i] = q[i] > kNegligible;
      if (support[i]) normal[i] = slope(q, i);
    }
    const double c = weighted_mean(normal, m, support);
    for (std::size_t i = 0; i < q.size(); ++i) {
      normal[i] = support[i] ? m[i] * (normal[i] - c) : 0.0;
    }
    auto shifted = [&](double gamma) {
      std::vector<double> v(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) v[i] = q[i] - gamma * normal[i];
      return detail::project_to_simplex(v);
    };
    double hi = 1e-8;
    for (int k = 0; k < 80 && !feasible(shifted(hi)); ++k) hi *= 2.0;
    if (!feasible(shifted(hi))) return restore(q);
    const auto b = detail::bisect([&](double g) { return feasible(shifted(g)); },
                                  0.0, hi, 200);
    return restore(shifted(b.hi));
  }

  // Ascent direction for E_Q X under the metric diag(q + delta): tangent to
  // the simplex and, when the budget is tight, to the divergence level set.
  // Coordinates pinned at zero that the step would push negative are frozen.
  std::vector<double> direction(const std::vector<double>& q) const {
    const std::size_t n = q.size();
    const bool tight = divergence(q) >= beta_ - 1e-9;
    const auto m = metric(q);
    std::vector<double> normal(n);
    for (std::size_t i = 0; i < n; ++i) normal[i] = slope(q, i);

    std::vector<bool> free(n, true);
    std::vector<double> g(n, 0.0);
    for (std::size_t round = 0; round <= n; ++round) {
      // Multipliers (a, b) make g = M (x - a - b n) orthogonal to 1 and n.
      double s1 = 0.0, sn = 0.0, sx = 0.0, snn = 0.0, snx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!free[i]) continue;
        s1 += m[i];
        sn += m[i] * normal[i];
        sx += m[i] * x_[i];
        snn += m[i] * normal[i] * normal[i];
        snx += m[i] * normal[i] * x_[i];
      }
      double a = s1 > 0.0 ? sx / s1 : 0.0;
      double b = 0.0;
      const double det = s1 * snn - sn * sn;
      if (tight && det > 1e-14 * s1 * snn) {
        a = (sx * snn - sn * snx) / det;
        b = (s1 * snx - sn * sx) / det;
      }
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = free[i] ? m[i] * (x_[i] - a - b * normal[i]) : 0.0;
      }
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (free[i] && q[i] <= kNegligible && g[i] < 0.0) {
          free[i] = false;
          changed = true;
        }
      }
      if (!changed) break;
    }
    return g;
  }

 private:
  double slope(const std::vector<double>& q, std::size_t i) const {
    return std::clamp(spec_.phi_prime(q[i] / p_[i]), -1e8, 1e8);
  }

  // Inverse curvature of the divergence in q, p_i / phi''(z_i), by central
  // differences of phi' and clamped so no coordinate freezes or dominates.
  std::vector<double> metric(const std::vector<double>& q) const {
    std::vector<double> m(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double z = q[i] / p_[i];
      const double h = std::max(1e-4 * z, 1e-9);
      const double lo = std::max(z - h, 0.5 * h);
      const double hi = z + h;
      const double curv = (spec_.phi_prime(hi) - spec_.phi_prime(lo)) / (hi - lo);
      double inv = curv > 0.0 && std::isfinite(curv) ? 1.0 / curv : 1e6;
      inv = std::clamp(inv, 1e-12, 1e6);
      m[i] = p_[i] * inv;
    }
    return m;
  }

  static double weighted_mean(const std::vector<double>& v,
                              const std::vector<double>& w,
                              const std::vector<bool>& mask) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (mask[i]) {
        num += w[i] * v[i];
        den += w[i];
      }
    }
    return den > 0.0 ? num / den : 0.0;
  }

  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  std::span<const double> x_;
  std::span<const double> p_;
  const DivergenceSpec& spec_;
  double beta_;
};

std::vector<double> projected_ascent(const BallProblem& ball,
                                     std::vector<double> q) {
  constexpr int kMaxIter = 20000;
  constexpr int kWindow = 50;
  constexpr double kMinGain = 1e-10;

  double obj = ball.objective(q);
  std::vector<double> history{obj};
  double eta = 1.0;
  for (int it = 0; it < kMaxIter; ++it) {
    const auto d = ball.direction(q);
    // Largest step before some coordinate reaches zero.
    double eta_wall = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (d[i] < 0.0) eta_wall = std::min(eta_wall, q[i] / -d[i]);
    }
    bool moved = false;
    for (int k = 0; k < 80 && !moved; ++k) {
      const double step = std::min(eta, eta_wall);
      std::vector<double> trial(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) {
        trial[i] = q[i] + step * d[i];
        if (d[i] < 0.0 && q[i] / -d[i] <= step) trial[i] = 0.0;
        if (trial[i] <= kNegligible) trial[i] = 0.0;
      }
      trial = ball.retract(detail::project_to_simplex(trial));
      const double v = ball.objective(trial);
      if (v > obj) {
        q = std::move(trial);
        obj = v;
        moved = true;
        eta *= 2.0;
      } else {
        eta *= 0.5;
      }
    }
    if (!moved) break;
    history.push_back(obj);
    if (history.size() > kWindow &&
        obj - history[history.size() - 1 - kWindow] < kMinGain) {
      break;
    }
  }
  return q;
}

std::vector<double> as_density(const std::vector<double>& q,
                               std::span<const double> p) {
  std::vector<double> z(q.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = q[i] / p[i];
  return z;
}

std::vector<double> as_measure(const std::vector<double>& z,
                               std::span<const double> p) {
  std::vector<double> q(z.size());
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    q[i] = std::max(z[i], 0.0) * p[i];
    total += q[i];
  }
  for (double& v : q) v /= total;
  return q;
}

// Deterministic parallel max over [0, count).
template <class F>
double parallel_max(std::size_t count, F&& f) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<double> best(workers, -std::numeric_limits<double>::infinity());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < count; k += workers) {
        best[w] = std::max(best[w], f(k));
      }
    });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(best.begin(), best.end());
}

}  // namespace

DualSolution optimal_density(const EmpiricalDistribution& dist,
                             const DivergenceSpec& spec, double beta,
                             double t_star, double mu_star) {
  detail::require_beta(beta);
  if (!(t_star > 0.0) || !std::isfinite(mu_star)) {
    throw Error(ErrorCode::invalid_parameter, "t* must be positive and mu* finite");
  }
  const double top = dist.esssup();
  const detail::ShiftedProblem problem{dist, spec, top};
  const double s = top / t_star - mu_star;
  const auto r = problem.residuals(t_star, s, beta);
  if (std::abs(r[0]) > 1e-6 || std::abs(r[1]) > 1e-6) {
    std::ostringstream msg;
    msg << "multipliers do not solve the characterizing equations (residuals "
        << r[0] << ", " << r[1] << ")";
    throw Error(ErrorCode::stale_multiplier, msg.str());
  }
  auto sol = describe(dist, spec, beta, problem.density(t_star, s),
                      DualSource::characterizing_equations);
  const double plug_in = primal_objective(dist, spec, beta, t_star, mu_star);
  if (std::abs(sol.objective - plug_in) > 1e-6) {
    std::ostringstream trace;
    trace << "E[XZ*]=" << sol.objective << " objective=" << plug_in
          << " t=" << t_star << " mu=" << mu_star;
    throw NumericError("optimal density does not close the duality gap",
                       trace.str());
  }
  return sol;
}

DualSolution solve_dual(const EmpiricalDistribution& dist,
                        const DivergenceSpec& spec, double beta,
                        const DualOptions& options) {
  detail::require_beta(beta);
  const std::size_t n = dist.size();
  if (dist.essinf() == dist.esssup()) {
    return describe(dist, spec, beta, std::vector<double>(n, 1.0),
                    DualSource::characterizing_equations);
  }

  const BallProblem ball(dist, spec, beta);
  const auto p = dist.probs();
  if (!options.use_characterizing_equations) {
    const auto q = projected_ascent(ball, {p.begin(), p.end()});
    return describe(dist, spec, beta, as_density(q, p), DualSource::projected_ascent);
  }

  // Mass on the top atoms alone is optimal whenever it fits the budget.
  const auto top_q = as_measure(top_atom_density(dist), p);
  if (ball.feasible(top_q)) {
    return describe(dist, spec, beta, as_density(top_q, p),
                    DualSource::projected_ascent);
  }

  if (const auto roots = solve_characterizing_equations(dist, spec, beta)) {
    auto q = as_measure(roots->density, p);
    auto sol = describe(dist, spec, beta, as_density(q, p),
                        DualSource::characterizing_equations);
    if (sol.divergence_slack >= -1e-8) return sol;
  }

  // Warm start from the primal subgradient, pulled back into the ball.
  std::vector<double> start(p.begin(), p.end());
  const auto primal = evaluate_primal(dist, spec, beta);
  const auto warm = ball.restore(as_measure(primal.density, p));
  if (ball.objective(warm) > ball.objective(start)) start = warm;

  const auto q = projected_ascent(ball, std::move(start));
  return describe(dist, spec, beta, as_density(q, p), DualSource::projected_ascent);
}

double brute_force_dual(const EmpiricalDistribution& dist,
                        const DivergenceSpec& spec, double beta) {
  detail::require_beta(beta);
  const std::size_t n = dist.size();
  if (n > 3) {
    throw Error(ErrorCode::oracle_size, "brute-force dual handles at most 3 atoms");
  }
  const auto x = dist.atoms();
  const auto p = dist.probs();
  if (n == 1) return x[0];

  if (n == 2) {
    constexpr std::size_t kGrid = 1000000;
    const double z_max = 1.0 / p[0];
    return parallel_max(kGrid + 1, [&](std::size_t k) {
      const double z1 = z_max * static_cast<double>(k) / kGrid;
      const double z2 = std::max((1.0 - p[0] * z1) / p[1], 0.0);
      const double div = p[0] * spec.phi(z1) + p[1] * spec.phi(z2);
      if (!(div <= beta)) return -std::numeric_limits<double>::infinity();
      return p[0] * x[0] * z1 + p[1] * x[1] * z2;
    });
  }

  // Rows q1 on a fixed grid; inside a row the budget cuts an interval of q2
  // and the linear objective peaks at one of its ends.
  constexpr std::size_t kRows = 3000;
  return parallel_max(kRows + 1, [&](std::size_t k) {
    const double q1 = static_cast<double>(k) / kRows;
    const double rest = 1.0 - q1;
    const double head = p[0] * spec.phi(q1 / p[0]);
    auto div = [&](double q2) {
      const double q3 = std::max(rest - q2, 0.0);
      return head + p[1] * spec.phi(q2 / p[1]) + p[2] * spec.phi(q3 / p[2]);
    };
    const auto centre = detail::golden_section(div, 0.0, rest, 1e-15, 200);
    if (!(centre.value <= beta)) return -std::numeric_limits<double>::infinity();
    double q2 = centre.x;
    if (x[1] >= x[2]) {
      if (div(rest) <= beta) {
        q2 = rest;
      } else {
        q2 = detail::bisect([&](double v) { return div(v) > beta; }, centre.x, rest).lo;
      }
    } else {
      if (div(0.0) <= beta) {
        q2 = 0.0;
      } else {
        q2 = detail::bisect([&](double v) { return div(v) <= beta; }, 0.0, centre.x).hi;
      }
    }
    return q1 * x[0] + q2 * x[1] + (rest - q2) * x[2];
  });
}

BallPoint divergence_ball_form(const EmpiricalDistribution& dist,
                               const DivergenceSpec& spec, double beta,
                               std::span<const double> q) {
  detail::require_beta(beta);
  if (q.size() != dist.size()) {
    throw Error(ErrorCode::dimension, "q and the distribution differ in length");
  }
  const auto x = dist.atoms();
  const auto p = dist.probs();
  double total = 0.0;
  double expectation = 0.0;
  double div = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0) || !std::isfinite(q[i])) {
      throw Error(ErrorCode::invalid_value, "q must be non-negative and finite");
    }
    total += q[i];
    expectation += q[i] * x[i];
    div += p[i] * spec.phi(q[i] / p[i]);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::invalid_value, "q must sum to one");
  }
  return {expectation, div <= beta + 1e-8};
}

}  // namespace divrisk
