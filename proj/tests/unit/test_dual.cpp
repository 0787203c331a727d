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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "divrisk/dual.hpp"
#include "divrisk/error.hpp"
#include "divrisk/risk.hpp"
#include "oracles.hpp"

namespace divrisk {
namespace {

using testing::Gen;

EmpiricalDistribution uniform(std::vector<double> v) {
  return EmpiricalDistribution::from_samples(v);
}

void expect_feasible(const EmpiricalDistribution& d, const DivergenceSpec& spec,
                     double beta, const DualSolution& s) {
  double mean = 0.0, div = 0.0, obj = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_GE(s.z[i], 0.0);
    mean += d.probs()[i] * s.z[i];
    div += d.probs()[i] * spec.phi(s.z[i]);
    obj += d.probs()[i] * d.atoms()[i] * s.z[i];
  }
  EXPECT_LE(std::abs(mean - 1.0), 1e-8);
  EXPECT_LE(div, beta + 1e-8);
  EXPECT_NEAR(obj, s.objective, 1e-12 * (1.0 + std::abs(obj)));
  EXPECT_LE(s.mean_slack, 1e-8);
  EXPECT_GE(s.divergence_slack, -1e-8);
}

TEST(Dual, Examples) {
  const auto c = solve_dual(uniform({2, 2}), make_kl(), 0.5);
  EXPECT_NEAR(c.objective, 2.0, 1e-12);

  const auto chi = solve_dual(uniform({-1, 1}), make_chi2(), 0.25);
  EXPECT_NEAR(chi.objective, 0.5, 1e-8);
  EXPECT_NEAR(chi.z[0], 0.5, 1e-7);
  EXPECT_NEAR(chi.z[1], 1.5, 1e-7);
  EXPECT_EQ(chi.source, DualSource::characterizing_equations);

  const auto kl = solve_dual(uniform({0, 1}), make_kl(), std::log(2.0));
  EXPECT_NEAR(kl.objective, 1.0, 1e-8);
  expect_feasible(uniform({0, 1}), make_kl(), std::log(2.0), kl);
}

TEST(Dual, BruteForceExamples) {
  EXPECT_NEAR(brute_force_dual(uniform({3}), make_chi2(), 0.5), 3.0, 1e-12);
  EXPECT_NEAR(brute_force_dual(uniform({-1, 1}), make_chi2(), 0.25), 0.5, 1e-4);
  EXPECT_NEAR(brute_force_dual(uniform({0, 1}), make_kl(), 0.3),
              solve_dual(uniform({0, 1}), make_kl(), 0.3).objective, 1e-4);
  try {
    brute_force_dual(uniform({1, 2, 3, 4}), make_kl(), 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::oracle_size);
  }
}

TEST(Dual, TwoAtomGridOracle) {
  Gen gen(41);
  for (int k = 0; k < 12; ++k) {
    const std::string name = gen.divergence();
    const auto spec = make_builtin_divergence(name);
    const std::vector<double> x{gen.uniform(-2, 2), gen.uniform(-2, 2)};
    const auto p = testing::normalized(gen.weights(2));
    const double beta = gen.uniform(0.05, 2.0);
    const auto d = EmpiricalDistribution::from_weighted(x, p);
    const double ref = testing::dual_two_atoms(x, p, testing::phi_by_name(name), beta);
    EXPECT_NEAR(solve_dual(d, spec, beta).objective, ref, 1e-4) << name;
  }
}

TEST(Dual, StrongDualityAndFeasibility) {
  Gen gen(42);
  for (int k = 0; k < 80; ++k) {
    const auto spec = make_builtin_divergence(gen.divergence());
    const int n = gen.integer(2, 10);
    const auto d = EmpiricalDistribution::from_weighted(
        gen.lattice_samples(n, -5, 5, 0.5), gen.weights(n));
    const double beta = gen.uniform(0.05, 3.0);
    const auto s = solve_dual(d, spec, beta);
    expect_feasible(d, spec, beta, s);
    EXPECT_NEAR(s.objective, evaluate_primal(d, spec, beta).value, 1e-5);
  }
}

TEST(Dual, ProjectedAscentAlone) {
  Gen gen(43);
  for (int k = 0; k < 30; ++k) {
    const auto spec = make_builtin_divergence(gen.divergence());
    const int n = gen.integer(2, 8);
    const auto d = EmpiricalDistribution::from_weighted(gen.samples(n, -3, 3),
                                                        gen.weights(n));
    const double beta = gen.uniform(0.05, 3.0);
    const auto s = solve_dual(d, spec, beta, DualOptions{false});
    EXPECT_EQ(s.source, DualSource::projected_ascent);
    expect_feasible(d, spec, beta, s);
    const double primal = evaluate_primal(d, spec, beta).value;
    EXPECT_LE(s.objective, primal + 1e-6);
    EXPECT_NEAR(s.objective, primal, 1e-5);
  }
}

TEST(Dual, WeakDualityForRandomFeasibleDensities) {
  Gen gen(44);
  for (int k = 0; k < 40; ++k) {
    const auto spec = make_builtin_divergence(gen.divergence());
    const int n = gen.integer(2, 8);
    const auto d = EmpiricalDistribution::from_weighted(gen.samples(n, -3, 3),
                                                        gen.weights(n));
    const double beta = gen.uniform(0.05, 3.0);
    const double primal = evaluate_primal(d, spec, beta).value;
    for (int j = 0; j < 20; ++j) {
      // Mix a random density toward Z = 1 until it fits the budget.
      std::vector<double> z(static_cast<std::size_t>(n));
      double m = 0.0;
      for (int i = 0; i < n; ++i) m += d.probs()[i] * (z[i] = gen.uniform(0, 3));
      for (auto& v : z) v /= m;
      for (int it = 0; it < 60; ++it) {
        double div = 0.0;
        for (int i = 0; i < n; ++i) div += d.probs()[i] * spec.phi(z[i]);
        if (div <= beta) break;
        for (auto& v : z) v = 0.5 * (v + 1.0);
      }
      double obj = 0.0;
      for (int i = 0; i < n; ++i) obj += d.probs()[i] * d.atoms()[i] * z[i];
      EXPECT_LE(obj, primal + 1e-6);
    }
  }
}

TEST(Dual, OptimalDensity) {
  const auto d = uniform({0, 1});
  const auto r = evaluate_primal(d, make_kl(), 0.1);
  ASSERT_TRUE(r.t_star.has_value());
  const auto s = optimal_density(d, make_kl(), 0.1, *r.t_star, *r.mu_star);
  EXPECT_NEAR(s.objective, r.value, 1e-6);
  EXPECT_LE(s.mean_slack, 1e-6);
  EXPECT_NEAR(s.divergence_slack, 0.0, 1e-6);
  try {
    optimal_density(d, make_kl(), 0.1, *r.t_star * 3.0, *r.mu_star);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::stale_multiplier);
  }
}

TEST(Dual, DivergenceBallForm) {
  const auto d = uniform({0, 1, 2});
  const std::vector<double> p{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto same = divergence_ball_form(d, make_kl(), 0.1, p);
  EXPECT_TRUE(same.feasible);
  EXPECT_NEAR(same.expectation, 1.0, 1e-15);

  const auto point = divergence_ball_form(d, make_kl(), 0.1,
                                          std::vector<double>{0, 0, 1});
  EXPECT_FALSE(point.feasible);  // D = log 3 > 0.1
  EXPECT_EQ(point.expectation, 2.0);

  Gen gen(45);
  for (int k = 0; k < 30; ++k) {
    const auto spec = make_builtin_divergence(gen.divergence());
    const int n = gen.integer(2, 8);
    const auto dist = EmpiricalDistribution::from_weighted(gen.samples(n, -3, 3),
                                                           gen.weights(n));
    const double beta = gen.uniform(0.05, 3.0);
    const auto s = solve_dual(dist, spec, beta);
    std::vector<double> q(static_cast<std::size_t>(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += (q[i] = dist.probs()[i] * s.z[i]);
    for (auto& v : q) v /= total;
    const auto ball = divergence_ball_form(dist, spec, beta, q);
    EXPECT_TRUE(ball.feasible);
    EXPECT_NEAR(ball.expectation, s.objective, 1e-8);
  }

  try {
    divergence_ball_form(d, make_kl(), 0.1, std::vector<double>{0.5, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension);
  }
}

}  // namespace
}  // namespace divrisk
