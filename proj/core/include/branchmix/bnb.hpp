#pragma once

// Branch and bound for mixed binary programs.  Node selection, variable
// selection, and fathoming are pluggable; trees are recorded in full so
// runs can be fingerprinted, dumped, and compared.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "branchmix/interval.hpp"
#include "branchmix/milp.hpp"
#include "branchmix/scoring.hpp"

namespace branchmix {

enum class NodePolicy { BestBound, DepthFirst };
enum class FathomMode { Full, LocalOnly };

enum class NodeStatus {
  Open,
  Branched,
  FathomedIntegral,
  FathomedInfeasible,
  FathomedBound,
};

struct BnbConfig {
  NodePolicy node_policy = NodePolicy::BestBound;
  FathomMode fathom_mode = FathomMode::Full;
  long max_nodes = 1000000;  // hard cap on created nodes
  bool partial_lp = false;   // budgeted child LP solves with warm starts
  long lp_pivot_budget = 25;
};

struct SearchNode {
  int id = 0;
  int parent = -1;
  int branch_var = -1;  // fixing that created this node (-1 at the root)
  int branch_val = -1;
  int child0 = -1;
  int child1 = -1;
  NodeStatus status = NodeStatus::Open;
  bool lp_feasible = false;
  double lp_obj = 0.0;
  std::vector<double> lp_x;
  PartialAssignment assign;
};

struct SearchTree {
  std::vector<SearchNode> nodes;
  bool node_cap_hit = false;

  long size() const { return static_cast<long>(nodes.size()); }
  // Order-independent hash of the tree: canonical preorder (0-child first)
  // over node statuses and branching variables.
  std::uint64_t fingerprint() const;
  void dump(std::ostream& os) const;  // one "id parent var value status lp_obj" line per node
  std::string dump() const;
};

struct BnbResult {
  SearchTree tree;
  std::optional<double> optimum;
  std::vector<double> best_x;
};

BnbResult bnb_run(const MilpInstance& q, const ScoringSpec& spec,
                  const BnbConfig& cfg, IntervalLedger* ledger = nullptr);

// Tree-size cost truncated at kappa.
double cost_tree_size(const SearchTree& tree, double kappa);

// Scoring context at the node reached by `assign`, given that node's LP
// optimum.  Exposed so path-locality of scores is directly testable.
ScoreContext make_context(const MilpInstance& q, const PartialAssignment& assign,
                          const std::vector<double>& parent_x, double parent_obj,
                          const BnbConfig& cfg);

std::string status_name(NodeStatus s);

}  // namespace branchmix
