#include "branchmix/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace branchmix {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v;
  h *= kFnvPrime;
}

bool fractional(double v) {
  return std::fabs(v) > kCmpTol && std::fabs(v - 1.0) > kCmpTol;
}

struct ChildLp {
  bool feasible = false;
  double obj = 0.0;
  std::vector<double> x;
};

ChildLp solve_child(const MilpInstance& q, const PartialAssignment& child,
                    const std::vector<double>& warm, int var, int val,
                    const BnbConfig& cfg) {
  ChildLp out;
  const LinearProgram lp = relaxation(q, child);
  if (cfg.partial_lp) {
    std::vector<double> w = warm;
    w[var] = static_cast<double>(val);
    const PartialSolveResult r = lp_partial_solve(lp, w, cfg.lp_pivot_budget);
    if (r.sol.status == LpStatus::Infeasible) return out;
    out.feasible = true;
    out.obj = r.sol.objective;
    out.x = r.sol.x;
  } else {
    const LpSolution s = lp_solve(lp);
    if (s.status == LpStatus::Infeasible) return out;
    out.feasible = true;
    out.obj = s.objective;
    out.x = s.x;
  }
  return out;
}

int pick_leaf(const SearchTree& t, NodePolicy policy) {
  int best = -1;
  if (policy == NodePolicy::BestBound) {
    for (const SearchNode& n : t.nodes) {
      if (n.status != NodeStatus::Open) continue;
      if (best < 0 || n.lp_obj > t.nodes[best].lp_obj + kCmpTol) best = n.id;
    }
  } else {
    for (int i = static_cast<int>(t.nodes.size()) - 1; i >= 0; --i) {
      if (t.nodes[i].status == NodeStatus::Open) {
        best = i;
        break;
      }
    }
    if (best >= 0 && t.nodes[best].branch_val == 1) {
      const int sib = t.nodes[t.nodes[best].parent].child0;
      if (sib >= 0 && t.nodes[sib].status == NodeStatus::Open) best = sib;
    }
  }
  return best;
}

void fingerprint_walk(const SearchTree& t, int id, std::uint64_t& h) {
  const SearchNode& n = t.nodes[id];
  mix(h, static_cast<std::uint64_t>(n.status) + 11);
  if (n.status == NodeStatus::Branched) {
    mix(h, static_cast<std::uint64_t>(t.nodes[n.child0].branch_var) + 17);
    fingerprint_walk(t, n.child0, h);
    fingerprint_walk(t, n.child1, h);
  }
}

}  // namespace

std::string status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::Open: return "open";
    case NodeStatus::Branched: return "branched";
    case NodeStatus::FathomedIntegral: return "integral";
    case NodeStatus::FathomedInfeasible: return "infeasible";
    default: return "bound";
  }
}

std::uint64_t SearchTree::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  if (!nodes.empty()) fingerprint_walk(*this, 0, h);
  mix(h, nodes.size());
  return h;
}

void SearchTree::dump(std::ostream& os) const {
  for (const SearchNode& n : nodes) {
    os << n.id << ' ' << n.parent << ' ' << n.branch_var << ' ' << n.branch_val
       << ' ' << status_name(n.status) << ' ';
    if (n.lp_feasible) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", n.lp_obj);
      os << buf;
    } else {
      os << '-';
    }
    os << '\n';
  }
}

std::string SearchTree::dump() const {
  std::ostringstream ss;
  dump(ss);
  return ss.str();
}

double cost_tree_size(const SearchTree& tree, double kappa) {
  return std::min(static_cast<double>(tree.size()), kappa);
}

ScoreContext make_context(const MilpInstance& q, const PartialAssignment& assign,
                          const std::vector<double>& parent_x, double parent_obj,
                          const BnbConfig& cfg) {
  ScoreContext ctx;
  ctx.instance = &q;
  ctx.parent_x = parent_x;
  ctx.parent_obj = parent_obj;
  ctx.big = q.big_value();
  for (int v : q.binaries) {
    if (assign.assigns(v) || !fractional(parent_x[v])) continue;
    CandidateData c;
    c.var = v;
    const ChildLp down = solve_child(q, assign.child(v, 0), parent_x, v, 0, cfg);
    const ChildLp up = solve_child(q, assign.child(v, 1), parent_x, v, 1, cfg);
    c.down_feasible = down.feasible;
    c.down_obj = down.obj;
    c.down_x = down.x;
    c.up_feasible = up.feasible;
    c.up_obj = up.obj;
    c.up_x = up.x;
    ctx.candidates.push_back(std::move(c));
  }
  return ctx;
}

BnbResult bnb_run(const MilpInstance& q, const ScoringSpec& spec,
                  const BnbConfig& cfg, IntervalLedger* ledger) {
  validate(q);
  BnbResult res;
  SearchTree& t = res.tree;
  double incumbent = -std::numeric_limits<double>::infinity();

  {
    SearchNode root;
    root.id = 0;
    const LpSolution s = lp_solve(relaxation(q, root.assign));
    if (s.status == LpStatus::Infeasible) {
      root.status = NodeStatus::FathomedInfeasible;
    } else {
      root.lp_feasible = true;
      root.lp_obj = s.objective;
      root.lp_x = s.x;
      if (is_integral(q, s.x)) {
        root.status = NodeStatus::FathomedIntegral;
        incumbent = s.objective;
        res.best_x = s.x;
      }
    }
    t.nodes.push_back(std::move(root));
  }

  const bool full_fathom = cfg.fathom_mode == FathomMode::Full;
  while (true) {
    const int leaf_id = pick_leaf(t, cfg.node_policy);
    if (leaf_id < 0) break;
    if (t.size() + 2 > cfg.max_nodes) {
      t.node_cap_hit = true;
      break;
    }
    if (full_fathom && std::isfinite(incumbent) &&
        t.nodes[leaf_id].lp_obj <= incumbent + kCmpTol) {
      t.nodes[leaf_id].status = NodeStatus::FathomedBound;
      continue;
    }

    ScoreContext ctx = make_context(q, t.nodes[leaf_id].assign,
                                    t.nodes[leaf_id].lp_x,
                                    t.nodes[leaf_id].lp_obj, cfg);
    if (ctx.candidates.empty()) {  // numerically integral after all
      t.nodes[leaf_id].status = NodeStatus::FathomedIntegral;
      if (t.nodes[leaf_id].lp_obj > incumbent) {
        incumbent = t.nodes[leaf_id].lp_obj;
        res.best_x = t.nodes[leaf_id].lp_x;
      }
      continue;
    }
    const std::size_t pick = select_variable(spec, ctx, ledger);
    const CandidateData& cd = ctx.candidates[pick];

    for (int val = 0; val <= 1; ++val) {
      SearchNode child;
      child.id = static_cast<int>(t.nodes.size());
      child.parent = leaf_id;
      child.branch_var = cd.var;
      child.branch_val = val;
      child.assign = t.nodes[leaf_id].assign.child(cd.var, val);
      bool feas = val == 0 ? cd.down_feasible : cd.up_feasible;
      double obj = val == 0 ? cd.down_obj : cd.up_obj;
      std::vector<double> x = val == 0 ? cd.down_x : cd.up_x;
      if (cfg.partial_lp && feas) {
        // Budgeted values guide scoring only; a node that actually enters
        // the tree gets its exact relaxation bound.
        const LpSolution s = lp_solve(relaxation(q, child.assign));
        feas = s.status == LpStatus::Optimal;
        obj = s.objective;
        x = s.x;
      }
      if (!feas) {
        child.status = NodeStatus::FathomedInfeasible;
      } else {
        child.lp_feasible = true;
        child.lp_obj = obj;
        child.lp_x = std::move(x);
        if (is_integral(q, child.lp_x)) {
          child.status = NodeStatus::FathomedIntegral;
          if (child.lp_obj > incumbent) {
            incumbent = child.lp_obj;
            res.best_x = child.lp_x;
          }
        } else if (full_fathom && std::isfinite(incumbent) &&
                   child.lp_obj <= incumbent + kCmpTol) {
          child.status = NodeStatus::FathomedBound;
        }
      }
      if (val == 0)
        t.nodes[leaf_id].child0 = child.id;
      else
        t.nodes[leaf_id].child1 = child.id;
      t.nodes.push_back(std::move(child));
    }
    t.nodes[leaf_id].status = NodeStatus::Branched;
  }

  if (std::isfinite(incumbent)) res.optimum = incumbent;
  return res;
}

}  // namespace branchmix
