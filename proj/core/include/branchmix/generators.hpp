#pragma once

// Instance generators: hand-built worst-case families with a tunable
// crossover parameter, a parity-infeasible family, seeded random instance
// families from combinatorial domains, and one fixed knapsack example.

#include <cstdint>
#include <utility>
#include <vector>

#include "branchmix/milp.hpp"

namespace branchmix {

// Parity-infeasible equality 2 * sum(x) = n with n odd; any fathom-free run
// must build a tree of at least 2^((n-1)/2) nodes.
MilpInstance jeroslow(int n);

struct FamilyParams {
  int n = 8;             // even, >= 6
  double mu_star = 0.45; // crossover of the two root branching scores
  double gamma = 1.0;    // objective scale
};

// Two infeasible families whose tree size jumps at mu = mu_star when
// branching with mu*minchange + (1-mu)*maxchange.  family_F builds small
// trees for mu < mu_star, family_G for mu > mu_star.
MilpInstance family_F(const FamilyParams& p);
MilpInstance family_G(const FamilyParams& p);

struct MixturePair {
  MilpInstance q_a;  // family_G at mu_star = a
  MilpInstance q_b;  // family_F at mu_star = b
};

// Requires 1/3 < a < b < 1/2; only mu in (a, b) keeps both trees small.
MixturePair worst_case_mixture(int n, double a, double b, double gamma_a = 1.0,
                               double gamma_b = 1.0);
// Draw m instances, each member of the pair with probability 1/2.
std::vector<MilpInstance> sample_mixture(const MixturePair& mix, int m,
                                         std::uint64_t seed);

// Combinatorial auction winner determination: one variable per bid, at most
// one winning bid per good and per bidder.
MilpInstance gen_winner_determination(int n_bidders, int n_goods,
                                      int max_bundle, std::uint64_t seed);

// Uncapacitated facility location (costs negated into a maximization);
// open-facility indicators binary, assignment variables continuous.
MilpInstance gen_facility_location(int n_facilities, int n_customers,
                                   std::uint64_t seed);

// k-medoid clustering with asymmetric uniform dissimilarities; center and
// assignment variables all binary.
MilpInstance gen_kmeans(int n_points, int k, std::uint64_t seed);

// Minimum-mislabel linear separator over Gaussian points with flipped
// labels; the weight vector lives in [-1,1]^dim via w = 2u - 1.
MilpInstance gen_linear_separator(int n_points, int dim, int n_flips,
                                  std::uint64_t seed);

// Fixed 7-item knapsack used as a worked example throughout the tests.
MilpInstance knapsack_example();

}  // namespace branchmix
