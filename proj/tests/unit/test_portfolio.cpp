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
#include <numeric>
#include <vector>

#include "divrisk/dual.hpp"
#include "divrisk/error.hpp"
#include "divrisk/portfolio.hpp"
#include "divrisk/risk.hpp"
#include "oracles.hpp"

namespace divrisk {
namespace {

using testing::Gen;

AssetPanel random_panel(Gen& gen, int assets, int scenarios, bool weighted) {
  std::vector<std::string> names;
  for (int i = 0; i < assets; ++i) names.push_back("a" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  for (int s = 0; s < scenarios; ++s) rows.push_back(gen.samples(assets, -2, 2));
  return AssetPanel::from_rows(names, rows, weighted ? gen.weights(scenarios)
                                                     : std::vector<double>{});
}

double risk_at(const AssetPanel& panel, const DivergenceSpec& spec, double beta,
               const std::vector<double>& w) {
  return evaluate_primal(panel.combine(w), spec, beta).value;
}

TEST(Panel, Construction) {
  const auto panel = AssetPanel::from_rows({"x", "y"}, {{1, 2}, {3, 4}}, {1, 3});
  EXPECT_EQ(panel.assets(), 2u);
  EXPECT_EQ(panel.scenarios(), 2u);
  EXPECT_EQ(panel.loss(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(panel.probs()[1], 0.75);
  const auto mix = panel.combine(std::vector<double>{0.5, 0.5});
  EXPECT_DOUBLE_EQ(mix.atoms()[1], 3.5);
}

TEST(Panel, Errors) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::numeric;
  };
  EXPECT_EQ(code([] { AssetPanel::from_rows({"x"}, {{1, 2}}); }), ErrorCode::panel);
  EXPECT_EQ(code([] { AssetPanel::from_rows({"x"}, {{1}}, {0.5, 0.5}); }),
            ErrorCode::panel);
  EXPECT_EQ(code([] { AssetPanel::from_rows({"x"}, {{1}, {2}}, {1, -1}); }),
            ErrorCode::panel);
  EXPECT_EQ(code([] { AssetPanel::from_rows({}, {}); }), ErrorCode::panel);
  EXPECT_EQ(code([] { AssetPanel::from_rows({"x"}, {{NAN}}); }), ErrorCode::panel);
  const auto panel = AssetPanel::from_rows({"x", "y", "z"}, {{1, 2, 3}});
  EXPECT_EQ(code([&] { grid_oracle_portfolio(panel, make_kl(), 0.5, 11); }),
            ErrorCode::panel);
  EXPECT_EQ(code([&] { panel.combine(std::vector<double>{1.0}); }), ErrorCode::panel);
}

TEST(Panel, Csv) {
  const auto panel = parse_panel_csv("# panel\nA,p,B\n1,1,2\n-1,3,0\n");
  EXPECT_EQ(panel.names(), (std::vector<std::string>{"A", "B"}));
  EXPECT_DOUBLE_EQ(panel.probs()[1], 0.75);
  EXPECT_EQ(panel.loss(1, 1), 0.0);
  try {
    parse_panel_csv("A,B\n1,2\n3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_panel_csv("A,B\n1,2\n3,zz\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Simplex, Projection) {
  const auto w = project_to_simplex(std::vector<double>{0.5, 0.5});
  EXPECT_EQ(w, (std::vector<double>{0.5, 0.5}));
  const auto c = project_to_simplex(std::vector<double>{3.0, -1.0, 0.0});
  EXPECT_EQ(c, (std::vector<double>{1.0, 0.0, 0.0}));
  Gen gen(61);
  for (int k = 0; k < 200; ++k) {
    const auto v = gen.samples(gen.integer(1, 8), -3, 3);
    const auto w2 = project_to_simplex(v);
    EXPECT_NEAR(std::accumulate(w2.begin(), w2.end(), 0.0), 1.0, 1e-12);
    for (double x : w2) EXPECT_GE(x, 0.0);
    // Optimality: no random simplex point is closer to v.
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) d += (v[i] - w2[i]) * (v[i] - w2[i]);
    for (int j = 0; j < 20; ++j) {
      const auto u = gen.simplex_point(static_cast<int>(v.size()));
      double du = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) du += (v[i] - u[i]) * (v[i] - u[i]);
      EXPECT_LE(d, du + 1e-12);
    }
  }
  EXPECT_THROW(project_to_simplex(std::vector<double>{}), Error);
}

TEST(Portfolio, Examples) {
  const auto spec = make_chi2();
  const auto single = AssetPanel::from_rows({"x"}, {{1}, {-1}, {3}});
  const auto s1 = minimize_portfolio_risk(single, spec, 0.25);
  EXPECT_EQ(s1.weights, std::vector<double>{1.0});
  EXPECT_NEAR(s1.risk, evaluate_primal(single.asset(0), spec, 0.25).value, 1e-12);

  const auto twins = AssetPanel::from_rows({"x", "y"}, {{1, 1}, {-1, -1}, {2, 2}});
  const double r0 = evaluate_primal(twins.asset(0), spec, 0.25).value;
  EXPECT_NEAR(minimize_portfolio_risk(twins, spec, 0.25).risk, r0, 1e-7);
  EXPECT_NEAR(grid_oracle_portfolio(twins, spec, 0.25, 101), r0, 1e-7);

  const auto hedge = AssetPanel::from_rows({"x", "y"}, {{-1, 1}, {1, -1}});
  const auto s = minimize_portfolio_risk(hedge, spec, 0.25);
  EXPECT_NEAR(s.risk, 0.0, 1e-6);
  EXPECT_NEAR(s.weights[0], 0.5, 1e-5);
  EXPECT_NEAR(grid_oracle_portfolio(hedge, spec, 0.25, 1001), 0.0, 1e-3);
}

TEST(Portfolio, Properties) {
  Gen gen(62);
  for (int k = 0; k < 12; ++k) {
    const auto spec = make_builtin_divergence(gen.divergence());
    const int assets = gen.integer(2, 4);
    const auto panel = random_panel(gen, assets, gen.integer(3, 8), gen.coin());
    const double beta = gen.uniform(0.05, 2.0);
    const auto sol = minimize_portfolio_risk(panel, spec, beta);

    EXPECT_NEAR(std::accumulate(sol.weights.begin(), sol.weights.end(), 0.0), 1.0, 1e-10);
    for (double w : sol.weights) EXPECT_GE(w, 0.0);
    EXPECT_NEAR(sol.risk, risk_at(panel, spec, beta, sol.weights), 1e-6);
    if (sol.t_star) {
      EXPECT_NEAR(joint_objective(panel, spec, beta, sol.weights, *sol.t_star,
                                  *sol.mu_star),
                  sol.risk, 1e-6);
    }
    for (int i = 0; i < assets; ++i) {
      EXPECT_LE(sol.risk, evaluate_primal(panel.asset(i), spec, beta).value + 1e-7);
    }
    // Weak-duality floor from the dual densities of a few portfolios.
    for (int j = 0; j < 5; ++j) {
      const auto w = gen.simplex_point(assets);
      const auto z = solve_dual(panel.combine(w), spec, beta).z;
      double floor = INFINITY;
      for (int i = 0; i < assets; ++i) {
        double e = 0.0;
        for (std::size_t s = 0; s < panel.scenarios(); ++s) {
          e += panel.probs()[s] * panel.loss(s, i) * z[s];
        }
        floor = std::min(floor, e);
      }
      EXPECT_GE(sol.risk, floor - 1e-6);
    }
    // Convexity along a random segment.
    const auto a = gen.simplex_point(assets);
    const auto b = gen.simplex_point(assets);
    std::vector<double> mid(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
    EXPECT_LE(risk_at(panel, spec, beta, mid),
              0.5 * (risk_at(panel, spec, beta, a) + risk_at(panel, spec, beta, b)) + 1e-7);
  }
}

TEST(Portfolio, MatchesGridOracle) {
  Gen gen(63);
  for (int k = 0; k < 6; ++k) {
    const auto spec = make_builtin_divergence(gen.divergence());
    const auto panel = random_panel(gen, 2, gen.integer(3, 8), gen.coin());
    const double beta = gen.uniform(0.05, 2.0);
    const double grid = grid_oracle_portfolio(panel, spec, beta, 1001);
    EXPECT_NEAR(minimize_portfolio_risk(panel, spec, beta).risk, grid, 1e-3);
  }
}

}  // namespace
}  // namespace divrisk
