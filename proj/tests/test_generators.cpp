#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "branchmix/bnb.hpp"
#include "branchmix/generators.hpp"
#include "branchmix/scoring.hpp"
#include "oracles.hpp"

using namespace branchmix;

namespace {

long tree_size(const MilpInstance& q, double mu = 0.5) {
  BnbConfig cfg;
  cfg.node_policy = NodePolicy::DepthFirst;
  return bnb_run(q, ScoringSpec::pair(ScoreRule::MinChange, ScoreRule::MaxChange, mu), cfg)
      .tree.size();
}

std::optional<double> solve_opt(const MilpInstance& q) {
  return bnb_run(q, ScoringSpec::single(ScoreRule::MostFrac), BnbConfig{}).optimum;
}

}  // namespace

TEST_CASE("parity instance forces exponential proof trees") {
  CHECK(!oracle::milp_enumerate(jeroslow(3)).has_value());
  CHECK(tree_size(jeroslow(5)) >= 4);
  CHECK(tree_size(jeroslow(7)) >= 8);
  CHECK_THROWS_AS(jeroslow(4), std::invalid_argument);
}

TEST_CASE("F-family data matches the worked construction") {
  const auto q = family_F({8, 0.45, 1.0});
  const std::vector<double> want = {1, 2, 3, 4, 5, 0, 1.5, 3.0 - 1.0 / (2 * 0.45)};
  REQUIRE(q.objective.size() == want.size());
  for (std::size_t j = 0; j < want.size(); ++j)
    CHECK(q.objective[j] == doctest::Approx(want[j]).epsilon(1e-12));
  REQUIRE(q.rows.size() == 2);
  CHECK(q.rows[0].rhs == doctest::Approx(5.0));
  CHECK(q.rows[1].rhs == doctest::Approx(3.0));
  CHECK(q.rows[0].sense == RowSense::Eq);
}

TEST_CASE("G-family data matches the mirrored construction") {
  const auto q = family_G({8, 0.45, 1.0});
  const double d = 3.0 - 1.0 / (2 * 0.45);
  const std::vector<double> want = {0, 0, 1.5, d, d, 1, 2, 3};
  REQUIRE(q.objective.size() == want.size());
  for (std::size_t j = 0; j < want.size(); ++j)
    CHECK(q.objective[j] == doctest::Approx(want[j]).epsilon(1e-12));
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS(family_F({7, 0.45, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(family_F({8, 0.2, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(family_F({8, 0.45, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(worst_case_mixture(8, 0.45, 0.4), std::invalid_argument);
}

TEST_CASE("families are parity-infeasible for all small sizes") {
  for (int n = 6; n <= 12; n += 2) {
    CHECK(!oracle::milp_enumerate(family_F({n, 0.45, 1.0})).has_value());
    CHECK(!oracle::milp_enumerate(family_G({n, 0.45, 1.0})).has_value());
  }
}

TEST_CASE("F root scores match the closed forms for random parameters") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mu_star(0.34, 0.49);
  std::uniform_real_distribution<double> gam(0.5, 4.0);
  for (int t = 0; t < 10; ++t) {
    const double ms = mu_star(rng), g = gam(rng);
    const auto q = family_F({8, ms, g});
    const auto root = lp_solve(relaxation(q, {}));
    const auto ctx = make_context(q, {}, root.x, root.objective, BnbConfig{});
    REQUIRE(ctx.candidates.size() == 2);
    const std::size_t med = ctx.candidates[0].var == 2 ? 0 : 1;
    CHECK(score(ScoreRule::MinChange, ctx, med) == doctest::Approx(g / 2).epsilon(1e-6));
    CHECK(score(ScoreRule::MaxChange, ctx, 1 - med) == doctest::Approx(3 * g / 4).epsilon(1e-6));
    CHECK(score(ScoreRule::MinChange, ctx, 1 - med) ==
          doctest::Approx(g / 4 * (3.0 - 1.0 / ms)).epsilon(1e-6));
  }
}

TEST_CASE("size regimes flip across the crossover") {
  CHECK(tree_size(family_F({10, 0.45, 1.0}), 0.2) <= 16);
  CHECK(tree_size(family_F({10, 0.45, 1.0}), 0.9) >= 8);  // 2^((10-4)/2)
  CHECK(tree_size(family_G({12, 0.45, 1.0}), 0.9) <= 16);
  CHECK(tree_size(family_G({12, 0.45, 1.0}), 0.2) >= 4);
}

TEST_CASE("mixture sampling is a fair coin") {
  const auto mix = worst_case_mixture(8, 0.4, 0.45);
  const auto sample = sample_mixture(mix, 1000, 2024);
  const auto a_text = to_text(mix.q_a);
  long n_a = 0;
  for (const auto& q : sample) n_a += to_text(q) == a_text ? 1 : 0;
  CHECK(n_a >= 450);
  CHECK(n_a <= 550);
  // Reproducible draw.
  const auto again = sample_mixture(mix, 1000, 2024);
  REQUIRE(again.size() == sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    CHECK(to_text(again[i]) == to_text(sample[i]));
}

TEST_CASE("generators are seed-reproducible byte for byte") {
  CHECK(to_text(gen_winner_determination(5, 4, 2, 9)) ==
        to_text(gen_winner_determination(5, 4, 2, 9)));
  CHECK(to_text(gen_facility_location(4, 4, 9)) == to_text(gen_facility_location(4, 4, 9)));
  CHECK(to_text(gen_kmeans(6, 2, 9)) == to_text(gen_kmeans(6, 2, 9)));
  CHECK(to_text(gen_linear_separator(8, 2, 2, 9)) == to_text(gen_linear_separator(8, 2, 2, 9)));
  CHECK(to_text(gen_winner_determination(5, 4, 2, 9)) !=
        to_text(gen_winner_determination(5, 4, 2, 10)));
}

TEST_CASE("winner determination optimum matches exhaustive enumeration") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto q = gen_winner_determination(5, 4, 2, seed);
    REQUIRE(q.num_vars() <= 15);
    const auto want = oracle::milp_enumerate(q);
    REQUIRE(want.has_value());
    CHECK(*solve_opt(q) == doctest::Approx(*want).epsilon(1e-6));
  }
}

TEST_CASE("single-good auctions award the best bid") {
  const auto q = gen_winner_determination(2, 1, 1, 5);
  const double best = *std::max_element(q.objective.begin(), q.objective.end());
  CHECK(*solve_opt(q) == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("facility location matches subset brute force") {
  for (std::uint64_t seed : {11u, 12u}) {
    const int nf = 4, nc = 4;
    const auto q = gen_facility_location(nf, nc, seed);
    // Recover the negated costs from the objective layout.
    const auto yvar = [&](int i, int j) { return nf + i * nf + j; };
    double best = -1e18;
    for (int mask = 1; mask < (1 << nf); ++mask) {
      double v = 0.0;
      for (int j = 0; j < nf; ++j)
        if (mask >> j & 1) v += q.objective[j];
      for (int i = 0; i < nc; ++i) {
        double c = -1e18;
        for (int j = 0; j < nf; ++j)
          if (mask >> j & 1) c = std::max(c, q.objective[yvar(i, j)]);
        v += c;
      }
      best = std::max(best, v);
    }
    CHECK(*solve_opt(q) == doctest::Approx(best).epsilon(1e-6));
  }
}

TEST_CASE("forced single facility pays its full cost") {
  const auto q = gen_facility_location(1, 1, 3);
  CHECK(*solve_opt(q) == doctest::Approx(q.objective[0] + q.objective[1]).epsilon(1e-9));
}

TEST_CASE("clustering matches brute force over center pairs") {
  const int n = 6, k = 2;
  const auto q = gen_kmeans(n, k, 21);
  const auto yvar = [&](int i, int j) { return n + i * n + j; };
  double best = -1e18;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double v = 0.0;
      for (int i = 0; i < n; ++i)
        v += std::max(q.objective[yvar(i, a)], q.objective[yvar(i, b)]);
      best = std::max(best, v);
    }
  CHECK(*solve_opt(q) == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("every point its own center costs nothing") {
  const auto q = gen_kmeans(4, 4, 8);
  CHECK(*solve_opt(q) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("separator instances match mislabel-set brute force") {
  const auto q = gen_linear_separator(8, 2, 2, 31);
  // Smallest feasible mislabel set, trying subsets in increasing size.
  const auto want = oracle::milp_enumerate_mixed(q);
  REQUIRE(want.has_value());
  CHECK(*solve_opt(q) == doctest::Approx(*want).epsilon(1e-6));
  CHECK(*want <= 0.0);
  CHECK(*want >= -2.0 - 1e-9);  // flipping back the planted flips always works
}

TEST_CASE("clean separator data needs no mislabels") {
  const auto q = gen_linear_separator(8, 2, 0, 17);
  CHECK(*solve_opt(q) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("knapsack example data") {
  const auto q = knapsack_example();
  CHECK(q.objective == std::vector<double>{40, 60, 10, 10, 3, 20, 60});
  REQUIRE(q.rows.size() == 1);
  CHECK(q.rows[0].rhs == doctest::Approx(100.0));
  CHECK(*solve_opt(q) == doctest::Approx(133.0));
}
