#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "branchmix/bounds.hpp"
#include "branchmix/erm.hpp"
#include "branchmix/generators.hpp"

using namespace branchmix;

TEST_CASE("path-wise pseudo-dimension scan") {
  // n=1: one interval, so the scan condition is 2^m > m + 1, first true at 2.
  CHECK(pdim_pathwise(1) == 2);
  // n=2: 2^1 * 2^2 = 8 intervals; verified by an independent inline scan.
  long m = 1;
  while (!(std::pow(2.0, m) > m * 8.0 + 1.0)) ++m;
  CHECK(pdim_pathwise(2) == m);
  // Quadratic envelope with a single fitted constant.
  const double c = static_cast<double>(pdim_pathwise(2)) / 4.0;
  for (int n = 2; n <= 40; ++n) CHECK(pdim_pathwise(n) <= c * n * n + 64);
  for (int n = 2; n <= 40; ++n) CHECK(pdim_pathwise(n) >= pdim_pathwise(n - 1));
}

TEST_CASE("general pseudo-dimension scan") {
  const long base = pdim_general(10, 2, 100);
  CHECK(base > 0);
  CHECK(pdim_general(10, 2, 200) > base);           // monotone in the node cap
  CHECK(pdim_general(10, 2, 100) == base);          // deterministic
  CHECK(pdim_general(20, 2, 100) > base);           // monotone in n
  // d=1 tracks the path-wise scan's shape within a constant factor.
  for (int n = 4; n <= 12; ++n)
    CHECK(pdim_pathwise(n) <= pdim_general(n, 2, n));
}

TEST_CASE("pseudo-dimension generalization bound") {
  CHECK(gen_bound_pdim(0, 1, 1.0, 1.0 / M_E) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gen_bound_pdim(9, 100, 2.0, 0.5) ==
        doctest::Approx(2.0 * (0.3 + std::sqrt(std::log(2.0) / 100.0))).epsilon(1e-12));
  CHECK(gen_bound_pdim(100, 400, 150.0, 0.05) ==
        doctest::Approx(150.0 * (0.5 + std::sqrt(std::log(20.0) / 400.0))).epsilon(1e-12));
  CHECK(gen_bound_pdim(16, 400, 1.0, 1.0 / M_E) ==
        doctest::Approx(2.0 * gen_bound_pdim(16, 1600, 1.0, 1.0 / M_E)).epsilon(1e-12));
  CHECK_THROWS(gen_bound_pdim(-1, 1, 1.0, 0.5));
}

TEST_CASE("worst-case Rademacher bound") {
  CHECK(rad_worstcase(1, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rad_worstcase(10, 100, 150.0) ==
        doctest::Approx(150.0 * std::sqrt((100.0 + 20.0 * std::log(10.0) +
                                           2.0 * std::log(100.0)) /
                                          100.0))
            .epsilon(1e-12));
  double prev = 1e18;
  for (long m : {10L, 20L, 40L, 80L, 160L}) {
    const double v = rad_worstcase(8, m, 150.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(rad_worstcase(8, 10, 300.0) == doctest::Approx(2.0 * rad_worstcase(8, 10, 150.0)));
}

TEST_CASE("data-dependent Rademacher bound") {
  CHECK(rad_datadep({{0, 0, 0}}, 3).value == doctest::Approx(0.0).epsilon(1e-6));

  // Identical nonzero vectors stay below the Massart value for their count.
  std::vector<std::vector<double>> same(5, std::vector<double>(4, 2.0));
  const auto r = rad_datadep(same, 4);
  CHECK(r.converged);
  CHECK(r.value <= massart_bound(5, 4, 2.0) + 1e-6);

  // Vectors harvested from an actual family sweep beat the worst case.
  std::vector<PiecewiseCost> pcs;
  BnbConfig cfg;
  for (int i = 0; i < 10; ++i)
    pcs.push_back(milp_behaviors(family_F({10, 0.45, 1.0 + i * 0.3}), ScoreRule::MinChange,
                                 ScoreRule::MaxChange, cfg, 150.0));
  std::vector<double> cuts = {0.0, 1.0};
  for (const auto& pc : pcs)
    for (const auto& piece : pc.pieces) cuts.push_back(piece.hi);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::vector<double>> vecs;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] - cuts[i - 1] < 1e-12) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i - 1]);
    std::vector<double> v;
    for (const auto& pc : pcs) v.push_back(pc.cost_at(mid));
    vecs.push_back(std::move(v));
  }
  const auto dd = rad_datadep(vecs, static_cast<long>(pcs.size()));
  CHECK(dd.value < rad_worstcase(10, static_cast<long>(pcs.size()), 150.0));
  CHECK(dd.value <= massart_bound(static_cast<long>(vecs.size()),
                                  static_cast<long>(pcs.size()), 150.0) +
                        1e-6);
}

TEST_CASE("Massart lemma value") {
  CHECK(massart_bound(1, 7, 3.0) == doctest::Approx(0.0));
  CHECK(massart_bound(10, 20, 2.0) ==
        doctest::Approx(2.0 * std::sqrt(2.0 * std::log(10.0) / 20.0)).epsilon(1e-12));
  CHECK(massart_bound(10, 20, 4.0) == doctest::Approx(2.0 * massart_bound(10, 20, 2.0)));
}

TEST_CASE("Rademacher generalization bound") {
  CHECK(gen_bound_rad(0.0, 32, 1.0, 4.0 / M_E) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gen_bound_rad(0.5, 32, 1.0, 4.0 / M_E) == doctest::Approx(2.0).epsilon(1e-12));
  // Quadrupling m shrinks the deviation term by half.
  const double d1 = gen_bound_rad(0.0, 25, 2.0, 0.1);
  const double d2 = gen_bound_rad(0.0, 100, 2.0, 0.1);
  CHECK(d1 == doctest::Approx(2.0 * d2).epsilon(1e-12));
}

TEST_CASE("logarithmic inversion device") {
  CHECK(lemma_log_inversion(1.0, 0.0) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-12));
  for (double a : {1.0, 2.0, 5.0})
    for (double b : {0.0, 1.0, 10.0}) {
      const double cap = lemma_log_inversion(a, b);
      // Anything past the cap violates x < a ln x + b.
      CHECK(cap >= a * std::log(cap) + b);
    }
}
