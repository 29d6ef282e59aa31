#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "branchmix/generators.hpp"
#include "branchmix/milp.hpp"
#include "oracles.hpp"

using namespace branchmix;

TEST_CASE("partial assignment semantics") {
  PartialAssignment a;
  const auto b = a.child(0, 1);
  CHECK(b.assigns(0));
  CHECK(b.value_of(0) == 1);
  CHECK(!b.assigns(1));
  CHECK_THROWS_AS(b.child(0, 0), MilpError);
  CHECK_THROWS_AS(a.child(0, 2), MilpError);
}

TEST_CASE("branching the F family small-side variable shifts the half") {
  // Fixing the last-but-one variable to 0 moves its 1/2 onto the neighbor.
  const auto q = family_F({8, 0.45, 1.0});
  const auto root = lp_solve(relaxation(q, {}));
  REQUIRE(root.status == LpStatus::Optimal);
  const auto child = lp_solve(relaxation(q, PartialAssignment{}.child(6, 0)));
  REQUIRE(child.status == LpStatus::Optimal);
  const std::vector<double> want = {0, 0, 0.5, 1, 1, 0.5, 0, 1};
  for (std::size_t j = 0; j < want.size(); ++j)
    CHECK(child.x[j] == doctest::Approx(want[j]).epsilon(1e-9));
}

TEST_CASE("integrality predicate") {
  const auto q = family_F({8, 0.45, 1.0});
  CHECK(!is_integral(q, {0, 0, 0.5, 1, 1, 0, 0.5, 1}));
  CHECK(is_integral(q, {0, 1, 1, 0, 0, 1, 0, 1}));
  CHECK(is_integral(q, {0, 1, 1, 0, 0, 1, 0, 1 - 1e-7}));
  CHECK(!is_integral(q, {0, 1, 1, 0, 0, 1, 0, 0.999}));
}

TEST_CASE("child relaxations never beat the parent bound") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const auto q = oracle::random_binary_milp(rng, 6, 3);
    const auto parent = lp_solve(relaxation(q, {}));
    if (parent.status != LpStatus::Optimal) continue;
    for (int v = 0; v < 2; ++v) {
      const auto child = lp_solve(relaxation(q, PartialAssignment{}.child(t % 6, v)));
      if (child.status == LpStatus::Optimal)
        CHECK(child.objective <= parent.objective + 1e-6);
    }
  }
}

TEST_CASE("fully fixed assignments are integral when feasible") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto q = oracle::random_binary_milp(rng, 5, 2);
    PartialAssignment a;
    for (int j = 0; j < 5; ++j) a = a.child(j, (t >> j) & 1);
    const auto sol = lp_solve(relaxation(q, a));
    if (sol.status == LpStatus::Optimal) CHECK(is_integral(q, sol.x));
  }
}

TEST_CASE("text format round-trips bit-exactly") {
  std::mt19937_64 rng(13);
  std::vector<MilpInstance> cases = {
      knapsack_example(),
      family_F({8, 0.45, 1.0}),
      family_G({10, 0.4, 2.5}),
      gen_winner_determination(4, 3, 2, 99),
      gen_facility_location(3, 3, 7),
      gen_linear_separator(5, 2, 1, 3),
  };
  for (int t = 0; t < 10; ++t)
    cases.push_back(oracle::random_binary_milp(rng, 4 + t % 4, 2));
  for (const auto& q : cases) {
    const auto text = to_text(q);
    const auto back = from_text(text);
    CHECK(to_text(back) == text);
    CHECK(back.objective == q.objective);
    CHECK(back.binaries == q.binaries);
    REQUIRE(back.rows.size() == q.rows.size());
    for (std::size_t r = 0; r < q.rows.size(); ++r) {
      CHECK(back.rows[r].coeffs == q.rows[r].coeffs);
      CHECK(back.rows[r].rhs == q.rows[r].rhs);
      CHECK(back.rows[r].sense == q.rows[r].sense);
    }
  }
}

TEST_CASE("malformed text rejected") {
  CHECK_THROWS_AS(from_text("n 2\nobj 1\n"), MilpError);
  CHECK_THROWS_AS(from_text("obj 1 2\n"), MilpError);
  CHECK_THROWS_AS(from_text("n 2\nobj 1 2\nrow xx 1 1 1\n"), MilpError);
  CHECK_THROWS_AS(from_text("n 2\nobj 1 2\nbin 5\n"), MilpError);
}

TEST_CASE("infeasible child-big-value constant") {
  const auto q = knapsack_example();
  CHECK(q.big_value() == doctest::Approx(204.0));  // |c|_1 + 1
}
