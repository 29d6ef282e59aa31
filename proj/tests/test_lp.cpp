#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "branchmix/generators.hpp"
#include "branchmix/lp.hpp"
#include "branchmix/milp.hpp"
#include "oracles.hpp"

using namespace branchmix;

TEST_CASE("knapsack relaxation optimum") {
  const auto q = knapsack_example();
  const auto sol = lp_solve(relaxation(q, {}));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(140.0).epsilon(1e-9));
  // Multiple optimal vertices exist; all share x1 as the only fractional var.
  int n_frac = 0;
  for (std::size_t j = 0; j < sol.x.size(); ++j) {
    const bool frac = sol.x[j] > 1e-6 && sol.x[j] < 1.0 - 1e-6;
    if (frac) {
      ++n_frac;
      CHECK(j == 0);
    }
  }
  CHECK(n_frac == 1);
}

TEST_CASE("family F root relaxation vertex") {
  const auto q = family_F({8, 0.45, 1.0});
  const auto sol = lp_solve(relaxation(q, {}));
  REQUIRE(sol.status == LpStatus::Optimal);
  const std::vector<double> want = {0, 0, 0.5, 1, 1, 0, 0.5, 1};
  REQUIRE(sol.x.size() == want.size());
  for (std::size_t j = 0; j < want.size(); ++j)
    CHECK(sol.x[j] == doctest::Approx(want[j]).epsilon(1e-9));
}

TEST_CASE("parity equality with all variables fixed is infeasible") {
  LinearProgram lp;
  lp.objective = {0, 0, 0};
  lp.rows.push_back({{2, 2, 2}, RowSense::Eq, 3.0});
  lp.lower = {1, 1, 0};
  lp.upper = {1, 1, 0};
  CHECK(lp_solve(lp).status == LpStatus::Infeasible);
}

TEST_CASE("random LPs match vertex enumeration") {
  std::mt19937_64 rng(20240811);
  for (int t = 0; t < 300; ++t) {
    const auto lp = oracle::random_lp(rng, 2 + t % 5, 1 + t % 4);
    const auto got = lp_solve(lp);
    const auto want = oracle::lp_enumerate(lp);
    REQUIRE((got.status == LpStatus::Optimal) == want.feasible);
    if (want.feasible)
      CHECK(got.objective == doctest::Approx(want.objective).epsilon(1e-6));
  }
}

TEST_CASE("solve is deterministic") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto lp = oracle::random_lp(rng, 5, 3);
    const auto a = lp_solve(lp);
    const auto b = lp_solve(lp);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.x == b.x);
  }
}

TEST_CASE("fixing a variable at its optimal value preserves the objective") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 50; ++t) {
    auto lp = oracle::random_lp(rng, 4, 2);
    const auto sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal) continue;
    const int j = t % 4;
    lp.lower[j] = lp.upper[j] = sol.x[j];
    const auto fixed = lp_solve(lp);
    REQUIRE(fixed.status == LpStatus::Optimal);
    CHECK(fixed.objective == doctest::Approx(sol.objective).epsilon(1e-6));
  }
}

TEST_CASE("partial solve pivot budgets on the knapsack root") {
  const auto lp = relaxation(knapsack_example(), {});
  const std::vector<double> zeros(7, 0.0);

  SUBCASE("zero pivots keep the warm objective") {
    const auto r = lp_partial_solve(lp, zeros, 0);
    CHECK(r.sol.objective == doctest::Approx(0.0));
    CHECK(r.pivots_used == 0);
  }
  SUBCASE("one pivot makes strict progress") {
    const auto r = lp_partial_solve(lp, zeros, 1);
    CHECK(r.sol.objective > 0.0);
    // Golden value of the implemented pivot order.
    CHECK(r.sol.objective == doctest::Approx(40.0).epsilon(1e-9));
  }
  SUBCASE("large budget reaches and proves the optimum") {
    const auto r = lp_partial_solve(lp, zeros, 1000);
    CHECK(r.proven_optimal);
    CHECK(r.sol.objective == doctest::Approx(140.0).epsilon(1e-9));
  }
}

TEST_CASE("partial solve detects infeasible restrictions") {
  auto lp = relaxation(family_F({8, 0.45, 1.0}), {});
  for (int j = 5; j < 8; ++j) lp.lower[j] = lp.upper[j] = (j == 7) ? 1.0 : 0.0;
  const auto r = lp_partial_solve(lp, std::vector<double>(8, 0.0), 100);
  CHECK(r.sol.status == LpStatus::Infeasible);
}
