#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "branchmix/erm.hpp"
#include "branchmix/generators.hpp"

using namespace branchmix;

namespace {

constexpr double kKappa = 1e6;

BnbConfig dfs() {
  BnbConfig cfg;
  cfg.node_policy = NodePolicy::DepthFirst;
  return cfg;
}

PiecewiseCost behaviors(const MilpInstance& q) {
  return milp_behaviors(q, ScoreRule::MinChange, ScoreRule::MaxChange, dfs(), kKappa);
}

}  // namespace

TEST_CASE("ledger pins the F-family crossover from the left") {
  const auto q = family_F({12, 0.45, 1.0});
  const auto run = run_with_ledger(q, ScoreRule::MinChange, ScoreRule::MaxChange, 0.2, dfs());
  CHECK(run.ledger.lo == doctest::Approx(0.0));
  CHECK(run.ledger.hi == doctest::Approx(0.45).epsilon(1e-6));
}

TEST_CASE("ledger pins the G-family crossover from the right") {
  const auto q = family_G({12, 0.4, 1.0});
  const auto run = run_with_ledger(q, ScoreRule::MinChange, ScoreRule::MaxChange, 0.9, dfs());
  CHECK(run.ledger.lo == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(run.ledger.hi == doctest::Approx(1.0));
}

TEST_CASE("F family splits into exactly two behaviors") {
  const auto pc = behaviors(family_F({12, 0.45, 1.0}));
  REQUIRE(pc.pieces.size() == 2);
  CHECK(pc.pieces[0].hi == doctest::Approx(0.45).epsilon(1e-6));
  CHECK(pc.pieces[0].cost < pc.pieces[1].cost);  // small trees below mu*
  CHECK(pc.pieces[0].fingerprint != pc.pieces[1].fingerprint);
}

TEST_CASE("identical rules give a single behavior") {
  const auto q = family_F({8, 0.45, 1.0});
  const auto pc = milp_behaviors(q, ScoreRule::MinChange, ScoreRule::MinChange, dfs(), kKappa);
  CHECK(pc.pieces.size() == 1);
}

TEST_CASE("mixture average has three cells with the middle one minimal") {
  const auto mix = worst_case_mixture(12, 0.4, 0.45);
  const std::vector<PiecewiseCost> data = {behaviors(mix.q_a), behaviors(mix.q_b)};
  const auto erm = erm_minimize(data);
  REQUIRE(erm.cells.size() == 3);
  CHECK(erm.lo == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(erm.hi == doctest::Approx(0.45).epsilon(1e-6));
  CHECK(erm.mu_hat > 0.4);
  CHECK(erm.mu_hat < 0.45);
  for (const auto& cell : erm.cells) CHECK(cell.avg_cost >= erm.min_avg_cost);
}

TEST_CASE("single-instance minimization returns that function's argmin") {
  const auto pc = behaviors(family_F({10, 0.45, 1.0}));
  const auto erm = erm_minimize({pc});
  REQUIRE(erm.cells.size() == pc.pieces.size());
  for (std::size_t i = 0; i < pc.pieces.size(); ++i)
    CHECK(erm.cells[i].avg_cost == doctest::Approx(pc.pieces[i].cost));
  CHECK(erm.min_avg_cost == doctest::Approx(pc.pieces[0].cost));
  CHECK(erm.mu_hat < 0.45);
}

TEST_CASE("varying-scale F sample still minimizes left of the crossover") {
  std::vector<PiecewiseCost> data;
  for (int i = 0; i < 10; ++i)
    data.push_back(behaviors(family_F({10, 0.45, 1.0 + 0.25 * i})));
  const auto erm = erm_minimize(data);
  CHECK(erm.mu_hat < 0.45);
}

TEST_CASE("grid oracle agrees with the exact sweep") {
  for (const auto& q : {family_F({8, 0.45, 1.0}), family_G({8, 0.4, 1.0})}) {
    const auto pc = behaviors(q);
    const auto grid = milp_grid_sweep(q, {ScoreRule::MinChange, ScoreRule::MaxChange},
                                      dfs(), kKappa, 1000);
    REQUIRE(grid.size() == 1001);
    for (const auto& gp : grid) {
      const double mu = gp.weights[0];
      CHECK(gp.fingerprint == pc.piece_at(mu).fingerprint);
      CHECK(gp.cost == doctest::Approx(pc.piece_at(mu).cost));
    }
  }
}

TEST_CASE("within-interval runs share one fingerprint") {
  const auto q = family_G({10, 0.5, 1.0});
  const auto pc = behaviors(q);
  for (const auto& piece : pc.pieces) {
    const double eps = 1e-7;
    for (double mu : {piece.lo + eps, 0.5 * (piece.lo + piece.hi), piece.hi - eps}) {
      if (mu < 0.0 || mu > 1.0) continue;
      const auto run = run_with_ledger(q, ScoreRule::MinChange, ScoreRule::MaxChange, mu, dfs());
      CHECK(run.result.tree.fingerprint() == piece.fingerprint);
    }
  }
}

TEST_CASE("average cost equals the mean of instance costs") {
  const auto mix = worst_case_mixture(10, 0.4, 0.45);
  const std::vector<PiecewiseCost> data = {behaviors(mix.q_a), behaviors(mix.q_b)};
  for (int g = 0; g <= 100; ++g) {
    const double mu = g / 100.0;
    const double want = 0.5 * (data[0].cost_at(mu) + data[1].cost_at(mu));
    CHECK(avg_cost_at(data, mu) == doctest::Approx(want));
  }
}

TEST_CASE("simplex grid sizes") {
  int calls = 0;
  const WeightRunner runner = [&](const std::vector<double>&) {
    ++calls;
    return MuRunOutcome{1.0, 42u};
  };
  CHECK(grid_sweep(runner, 3, 10).size() == 66);
  CHECK(calls == 66);
  CHECK(grid_sweep(runner, 2, 1000).size() == 1001);
}

TEST_CASE("degenerate two-point grid with one rule twice") {
  const auto q = family_F({8, 0.45, 1.0});
  const auto grid = milp_grid_sweep(q, {ScoreRule::MinChange, ScoreRule::MinChange},
                                    dfs(), kKappa, 1);
  REQUIRE(grid.size() == 2);
  CHECK(grid[0].fingerprint == grid[1].fingerprint);
}

TEST_CASE("piece bookkeeping: contiguous cover of [0,1]") {
  const auto pc = behaviors(family_F({12, 0.45, 1.0}));
  CHECK(pc.pieces.front().lo == doctest::Approx(0.0));
  CHECK(pc.pieces.back().hi == doctest::Approx(1.0));
  for (std::size_t i = 1; i < pc.pieces.size(); ++i) {
    CHECK(pc.pieces[i].lo == doctest::Approx(pc.pieces[i - 1].hi));
    CHECK(pc.pieces[i].lo_inclusive != pc.pieces[i - 1].hi_inclusive);
  }
}
