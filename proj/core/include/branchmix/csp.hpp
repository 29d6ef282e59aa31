#pragma once

// Tree search over finite-domain constraint satisfaction: one child per
// domain value, pluggable fathoming, and the same parameterized variable
// selection / interval machinery as the MILP side.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "branchmix/bnb.hpp"  // NodePolicy
#include "branchmix/erm.hpp"
#include "branchmix/interval.hpp"

namespace branchmix {

struct CspConstraint {
  std::vector<int> scope;  // variable indices
  std::function<bool(const std::vector<int>&)> pred;  // scope-order values
  std::string kind = "custom";  // "ne" constraints round-trip through text
};

struct CspInstance {
  std::vector<std::vector<std::string>> value_names;  // per-variable domains
  std::vector<CspConstraint> constraints;
  std::vector<std::string> var_names;

  int num_vars() const { return static_cast<int>(value_names.size()); }
  int domain_size(int v) const { return static_cast<int>(value_names[v].size()); }
};

struct CspError : std::runtime_error {
  explicit CspError(const std::string& what) : std::runtime_error(what) {}
};

enum class CspRule {
  DegDom,          // constraint degree / domain size
  DDegDom,         // degree counting only constraints with another unassigned var
  SmallestDomain,  // 1 / domain size
};

CspRule csp_rule_from_name(const std::string& name);
std::string csp_rule_name(CspRule rule);

struct CspScoringSpec {
  std::vector<CspRule> rules;
  std::vector<double> weights;

  static CspScoringSpec single(CspRule rule);
  static CspScoringSpec pair(CspRule r1, CspRule r2, double mu);
};

// Fathoming presets: `Hard` prunes any node violating a fully-assigned
// constraint and stops at the first complete consistent assignment (decision
// search); `None` only fathoms complete assignments, keeping the best count
// of satisfied constraints, with an upper-bound prune against the incumbent.
enum class CspFathomPreset { Hard, None };

struct CspConfig {
  CspFathomPreset preset = CspFathomPreset::Hard;
  NodePolicy node_policy = NodePolicy::DepthFirst;
  long max_nodes = 1000000;
};

enum class CspNodeStatus {
  Open,
  Branched,
  FathomedSolution,
  FathomedViolation,
  FathomedBound,
};

struct CspNode {
  int id = 0;
  int parent = -1;
  int branch_var = -1;
  int branch_val = -1;  // domain value index
  std::vector<int> children;
  CspNodeStatus status = CspNodeStatus::Open;
  std::vector<int> assignment;  // value indices, -1 if unassigned
};

struct CspTree {
  std::vector<CspNode> nodes;
  bool node_cap_hit = false;

  long size() const { return static_cast<long>(nodes.size()); }
  std::uint64_t fingerprint() const;  // canonical preorder, domain order
};

struct CspResult {
  CspTree tree;
  std::optional<std::vector<int>> best;  // value indices per variable
  double best_satisfied = 0.0;           // constraints satisfied by `best`
};

double csp_score(CspRule rule, const CspInstance& inst,
                 const std::vector<int>& assignment, int var);

// Argmax of the combined score over unassigned variables, ties to the
// lowest index; two-rule specs can record the mu-invariance interval.
int csp_select(const CspScoringSpec& spec, const CspInstance& inst,
               const std::vector<int>& assignment,
               IntervalLedger* ledger = nullptr);

CspResult csp_run(const CspInstance& inst, const CspScoringSpec& spec,
                  const CspConfig& cfg, IntervalLedger* ledger = nullptr);

// Behavior sweep over mu * rule1 + (1-mu) * rule2 with tree-size cost.
PiecewiseCost csp_behaviors(const CspInstance& inst, CspRule r1, CspRule r2,
                            const CspConfig& cfg, double kappa);
std::vector<GridPoint> csp_grid_sweep(const CspInstance& inst,
                                      const std::vector<CspRule>& rules,
                                      const CspConfig& cfg, double kappa,
                                      int resolution);

// Proper k-coloring as a CSP: one variable per vertex, disequality per edge.
CspInstance graph_coloring(int n_vertices,
                           const std::vector<std::pair<int, int>>& edges,
                           int k);

// Text format: `var <name> <values...>` then `ne <name1> <name2>` lines.
CspInstance csp_from_text(const std::string& text);
std::string csp_to_text(const CspInstance& inst);  // throws on custom constraints
CspInstance load_csp(const std::string& path);

// DIMACS edge format ("p edge N M", "e u v" 1-based).
std::pair<int, std::vector<std::pair<int, int>>> load_dimacs_graph(
    const std::string& path);

}  // namespace branchmix
