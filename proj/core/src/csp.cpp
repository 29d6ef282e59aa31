#include "branchmix/csp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace branchmix {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;
constexpr double kTieTol = 1e-9;

void mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v;
  h *= kFnvPrime;
}

void validate(const CspInstance& inst) {
  if (inst.num_vars() == 0) throw CspError("instance has no variables");
  for (int v = 0; v < inst.num_vars(); ++v)
    if (inst.domain_size(v) == 0) throw CspError("empty domain");
  for (const CspConstraint& c : inst.constraints) {
    if (c.scope.empty() || !c.pred) throw CspError("malformed constraint");
    for (int v : c.scope)
      if (v < 0 || v >= inst.num_vars())
        throw CspError("constraint scope out of range");
  }
}

bool fully_assigned(const CspConstraint& c, const std::vector<int>& a) {
  for (int v : c.scope)
    if (a[v] < 0) return false;
  return true;
}

bool satisfied(const CspConstraint& c, const std::vector<int>& a) {
  std::vector<int> vals(c.scope.size());
  for (std::size_t i = 0; i < c.scope.size(); ++i) vals[i] = a[c.scope[i]];
  return c.pred(vals);
}

bool complete(const CspInstance& inst, const std::vector<int>& a) {
  for (int v = 0; v < inst.num_vars(); ++v)
    if (a[v] < 0) return false;
  return true;
}

int violated_count(const CspInstance& inst, const std::vector<int>& a) {
  int k = 0;
  for (const CspConstraint& c : inst.constraints)
    if (fully_assigned(c, a) && !satisfied(c, a)) ++k;
  return k;
}

int satisfied_count(const CspInstance& inst, const std::vector<int>& a) {
  int k = 0;
  for (const CspConstraint& c : inst.constraints)
    if (fully_assigned(c, a) && satisfied(c, a)) ++k;
  return k;
}

void fingerprint_walk(const CspTree& t, int id, std::uint64_t& h) {
  const CspNode& n = t.nodes[id];
  mix(h, static_cast<std::uint64_t>(n.status) + 11);
  if (n.status == CspNodeStatus::Branched) {
    mix(h, static_cast<std::uint64_t>(t.nodes[n.children.front()].branch_var) + 17);
    for (int c : n.children) fingerprint_walk(t, c, h);
  }
}

int pick_leaf(const CspTree& t, const CspInstance& inst, NodePolicy policy) {
  int best = -1;
  if (policy == NodePolicy::DepthFirst) {
    for (int i = static_cast<int>(t.nodes.size()) - 1; i >= 0; --i) {
      if (t.nodes[i].status == CspNodeStatus::Open) {
        best = i;
        break;
      }
    }
    if (best >= 0 && t.nodes[best].parent >= 0) {
      // Prefer the earliest open sibling (lowest domain value first).
      for (int s : t.nodes[t.nodes[best].parent].children)
        if (t.nodes[s].status == CspNodeStatus::Open) {
          best = s;
          break;
        }
    }
  } else {
    // Best bound: the node with the most constraints still satisfiable,
    // ties to the lowest id.
    int best_bound = -1;
    for (const CspNode& n : t.nodes) {
      if (n.status != CspNodeStatus::Open) continue;
      const int bound =
          static_cast<int>(inst.constraints.size()) - violated_count(inst, n.assignment);
      if (bound > best_bound) {
        best_bound = bound;
        best = n.id;
      }
    }
  }
  return best;
}

}  // namespace

CspRule csp_rule_from_name(const std::string& name) {
  if (name == "degdom") return CspRule::DegDom;
  if (name == "ddegdom") return CspRule::DDegDom;
  if (name == "smallestdom") return CspRule::SmallestDomain;
  throw CspError("unknown csp rule '" + name + "'");
}

std::string csp_rule_name(CspRule rule) {
  switch (rule) {
    case CspRule::DegDom: return "degdom";
    case CspRule::DDegDom: return "ddegdom";
    default: return "smallestdom";
  }
}

CspScoringSpec CspScoringSpec::single(CspRule rule) { return {{rule}, {1.0}}; }

CspScoringSpec CspScoringSpec::pair(CspRule r1, CspRule r2, double mu) {
  return {{r1, r2}, {mu, 1.0 - mu}};
}

double csp_score(CspRule rule, const CspInstance& inst,
                 const std::vector<int>& assignment, int var) {
  const double dom = static_cast<double>(inst.domain_size(var));
  switch (rule) {
    case CspRule::SmallestDomain:
      return 1.0 / dom;
    case CspRule::DegDom: {
      int deg = 0;
      for (const CspConstraint& c : inst.constraints)
        if (std::find(c.scope.begin(), c.scope.end(), var) != c.scope.end())
          ++deg;
      return static_cast<double>(deg) / dom;
    }
    default: {  // DDegDom
      int deg = 0;
      for (const CspConstraint& c : inst.constraints) {
        bool has_var = false, has_other_unassigned = false;
        for (int v : c.scope) {
          if (v == var)
            has_var = true;
          else if (assignment[v] < 0)
            has_other_unassigned = true;
        }
        if (has_var && has_other_unassigned) ++deg;
      }
      return static_cast<double>(deg) / dom;
    }
  }
}

int csp_select(const CspScoringSpec& spec, const CspInstance& inst,
               const std::vector<int>& assignment, IntervalLedger* ledger) {
  if (spec.rules.size() != spec.weights.size() || spec.rules.empty())
    throw CspError("scoring spec needs matching rules and weights");
  std::vector<int> cands;
  for (int v = 0; v < inst.num_vars(); ++v)
    if (assignment[v] < 0) cands.push_back(v);
  if (cands.empty()) throw CspError("no unassigned variable to select");

  std::vector<double> total(cands.size(), 0.0);
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t k = 0; k < spec.rules.size(); ++k)
      total[i] += spec.weights[k] * csp_score(spec.rules[k], inst, assignment, cands[i]);
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (total[i] > total[best] + kTieTol) best = i;

  if (ledger && spec.rules.size() == 2) {
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (j == best) continue;
      const double s1b = csp_score(spec.rules[0], inst, assignment, cands[best]);
      const double s2b = csp_score(spec.rules[1], inst, assignment, cands[best]);
      const double s1j = csp_score(spec.rules[0], inst, assignment, cands[j]);
      const double s2j = csp_score(spec.rules[1], inst, assignment, cands[j]);
      const double alpha = s2b - s2j;
      const double beta = (s1b - s1j) - alpha;
      if (std::fabs(beta) <= 1e-12) continue;
      const double r = -alpha / beta;
      const bool win_tie = cands[best] < cands[j];
      if (beta > 0)
        ledger->restrict_lo(r, win_tie);
      else
        ledger->restrict_hi(r, win_tie);
    }
  }
  return cands[best];
}

std::uint64_t CspTree::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  if (!nodes.empty()) fingerprint_walk(*this, 0, h);
  mix(h, nodes.size());
  return h;
}

CspResult csp_run(const CspInstance& inst, const CspScoringSpec& spec,
                  const CspConfig& cfg, IntervalLedger* ledger) {
  validate(inst);
  CspResult res;
  CspTree& t = res.tree;
  const bool hard = cfg.preset == CspFathomPreset::Hard;
  const int n_cons = static_cast<int>(inst.constraints.size());
  double incumbent = -1.0;  // satisfied-constraint count of the best complete node

  const auto classify = [&](CspNode& node) {
    if (hard && violated_count(inst, node.assignment) > 0) {
      node.status = CspNodeStatus::FathomedViolation;
      return;
    }
    if (complete(inst, node.assignment)) {
      node.status = CspNodeStatus::FathomedSolution;
      const double sat = satisfied_count(inst, node.assignment);
      if (sat > incumbent) {
        incumbent = sat;
        res.best = node.assignment;
        res.best_satisfied = sat;
      }
      return;
    }
    if (!hard && incumbent >= 0 &&
        n_cons - violated_count(inst, node.assignment) <= incumbent) {
      node.status = CspNodeStatus::FathomedBound;
    }
  };

  {
    CspNode root;
    root.assignment.assign(inst.num_vars(), -1);
    classify(root);
    t.nodes.push_back(std::move(root));
  }

  while (true) {
    if (hard && res.best) break;  // decision search: first solution wins
    const int leaf_id = pick_leaf(t, inst, cfg.node_policy);
    if (leaf_id < 0) break;
    const int fanout = inst.domain_size(
        csp_select(spec, inst, t.nodes[leaf_id].assignment, nullptr));
    if (t.size() + fanout > cfg.max_nodes) {
      t.node_cap_hit = true;
      break;
    }
    if (!hard && incumbent >= 0 &&
        n_cons - violated_count(inst, t.nodes[leaf_id].assignment) <= incumbent) {
      t.nodes[leaf_id].status = CspNodeStatus::FathomedBound;
      continue;
    }
    const int var = csp_select(spec, inst, t.nodes[leaf_id].assignment, ledger);
    for (int val = 0; val < inst.domain_size(var); ++val) {
      CspNode child;
      child.id = static_cast<int>(t.nodes.size());
      child.parent = leaf_id;
      child.branch_var = var;
      child.branch_val = val;
      child.assignment = t.nodes[leaf_id].assignment;
      child.assignment[var] = val;
      classify(child);
      t.nodes[leaf_id].children.push_back(child.id);
      t.nodes.push_back(std::move(child));
      if (hard && res.best) break;
    }
    t.nodes[leaf_id].status = CspNodeStatus::Branched;
    if (hard && res.best) break;
  }
  return res;
}

PiecewiseCost csp_behaviors(const CspInstance& inst, CspRule r1, CspRule r2,
                            const CspConfig& cfg, double kappa) {
  return enumerate_behaviors([&](double mu, IntervalLedger* led) {
    const CspResult r = csp_run(inst, CspScoringSpec::pair(r1, r2, mu), cfg, led);
    return MuRunOutcome{
        std::min(static_cast<double>(r.tree.size()), kappa),
        r.tree.fingerprint()};
  });
}

std::vector<GridPoint> csp_grid_sweep(const CspInstance& inst,
                                      const std::vector<CspRule>& rules,
                                      const CspConfig& cfg, double kappa,
                                      int resolution) {
  return grid_sweep(
      [&](const std::vector<double>& w) {
        CspScoringSpec spec;
        spec.rules = rules;
        spec.weights = w;
        const CspResult r = csp_run(inst, spec, cfg);
        return MuRunOutcome{
            std::min(static_cast<double>(r.tree.size()), kappa),
            r.tree.fingerprint()};
      },
      static_cast<int>(rules.size()), resolution);
}

CspInstance graph_coloring(int n_vertices,
                           const std::vector<std::pair<int, int>>& edges,
                           int k) {
  if (n_vertices < 1 || k < 1) throw CspError("need vertices and colors");
  CspInstance inst;
  for (int v = 0; v < n_vertices; ++v) {
    inst.var_names.push_back("v" + std::to_string(v + 1));
    std::vector<std::string> dom;
    for (int c = 0; c < k; ++c) dom.push_back(std::to_string(c));
    inst.value_names.push_back(std::move(dom));
  }
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices || u == v)
      throw CspError("bad edge");
    CspConstraint c;
    c.scope = {u, v};
    c.pred = [](const std::vector<int>& vals) { return vals[0] != vals[1]; };
    c.kind = "ne";
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

CspInstance csp_from_text(const std::string& text) {
  CspInstance inst;
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<std::string, std::string>> ne_pairs;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "var") {
      std::string name;
      if (!(ls >> name)) throw CspError("var line missing a name");
      std::vector<std::string> values;
      std::string v;
      while (ls >> v) values.push_back(v);
      if (values.empty()) throw CspError("variable '" + name + "' has no values");
      inst.var_names.push_back(name);
      inst.value_names.push_back(std::move(values));
    } else if (tag == "ne") {
      std::string a, b;
      if (!(ls >> a >> b)) throw CspError("ne line needs two variable names");
      ne_pairs.emplace_back(a, b);
    } else {
      throw CspError("unknown line tag '" + tag + "'");
    }
  }
  const auto index_of = [&](const std::string& name) {
    for (int v = 0; v < inst.num_vars(); ++v)
      if (inst.var_names[v] == name) return v;
    throw CspError("unknown variable '" + name + "'");
  };
  for (const auto& [a, b] : ne_pairs) {
    CspConstraint c;
    const int ia = index_of(a), ib = index_of(b);
    c.scope = {ia, ib};
    // Disequality compares value *names* so shared tokens collide.
    c.pred = [da = inst.value_names[ia],
              db = inst.value_names[ib]](const std::vector<int>& vals) {
      return da[vals[0]] != db[vals[1]];
    };
    c.kind = "ne";
    inst.constraints.push_back(std::move(c));
  }
  validate(inst);
  return inst;
}

std::string csp_to_text(const CspInstance& inst) {
  std::ostringstream os;
  for (int v = 0; v < inst.num_vars(); ++v) {
    os << "var " << inst.var_names[v];
    for (const std::string& val : inst.value_names[v]) os << ' ' << val;
    os << '\n';
  }
  for (const CspConstraint& c : inst.constraints) {
    if (c.kind != "ne" || c.scope.size() != 2)
      throw CspError("only disequality constraints have a text form");
    os << "ne " << inst.var_names[c.scope[0]] << ' '
       << inst.var_names[c.scope[1]] << '\n';
  }
  return os.str();
}

CspInstance load_csp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CspError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return csp_from_text(ss.str());
}

std::pair<int, std::vector<std::pair<int, int>>> load_dimacs_graph(
    const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CspError("cannot open '" + path + "'");
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string fmt;
      long m;
      if (!(ls >> fmt >> n >> m) || fmt != "edge")
        throw CspError("bad DIMACS problem line");
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw CspError("bad DIMACS edge line");
      edges.emplace_back(u - 1, v - 1);
    }
  }
  if (n < 1) throw CspError("DIMACS file missing problem line");
  return {n, edges};
}

}  // namespace branchmix
