#pragma once

// Variable-selection scoring for branch and bound.  A score depends only on
// data gathered along the node's path (parent LP optimum and the two child
// LP values per candidate), never on the rest of the tree.

#include <string>
#include <vector>

#include "branchmix/interval.hpp"
#include "branchmix/milp.hpp"

namespace branchmix {

enum class ScoreRule {
  MostFrac,   // min{1-x, x}
  Linear,     // (1-mu)*max{d+,d-} + mu*min{d+,d-}
  Product,    // max{d-,g} * max{d+,g}, g = 1e-6
  Entropic,   // negated binary-entropy mass of both children's LP optima
  MinChange,  // min{d+,d-}
  MaxChange,  // max{d+,d-}
};

ScoreRule rule_from_name(const std::string& name);
std::string rule_name(ScoreRule rule);

// Child LP data for one branching candidate at a node.
struct CandidateData {
  int var = -1;
  double down_obj = 0.0;  // child objective with var -> 0 (valid if feasible)
  double up_obj = 0.0;
  bool down_feasible = false;
  bool up_feasible = false;
  std::vector<double> down_x;  // child optima, empty when infeasible
  std::vector<double> up_x;
};

struct ScoreContext {
  const MilpInstance* instance = nullptr;
  std::vector<double> parent_x;
  double parent_obj = 0.0;
  double big = 0.0;  // stand-in objective change for infeasible children
  std::vector<CandidateData> candidates;
};

// Convex combination of base rules; `linear_mu` parameterizes ScoreRule::Linear.
struct ScoringSpec {
  std::vector<ScoreRule> rules;
  std::vector<double> weights;
  double linear_mu = 0.5;

  static ScoringSpec single(ScoreRule rule);
  static ScoringSpec pair(ScoreRule r1, ScoreRule r2, double mu);  // weights (mu, 1-mu)
};

double score(ScoreRule rule, const ScoreContext& ctx, std::size_t cand,
             double linear_mu = 0.5);
double combined_score(const ScoringSpec& spec, const ScoreContext& ctx,
                      std::size_t cand);

// Argmax of the combined score over candidates; exact ties (within 1e-9) go
// to the lowest variable index.  With a two-rule spec and a ledger, records
// the mu-interval over which this selection is invariant.
std::size_t select_variable(const ScoringSpec& spec, const ScoreContext& ctx,
                            IntervalLedger* ledger = nullptr);

}  // namespace branchmix
