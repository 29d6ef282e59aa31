// Command-line front end: instance generation, single solves, exact
// parameter sweeps, average-cost minimization, sample-complexity curves,
// and CSP search.  Exit codes: 0 success, 2 usage error, 1 runtime failure.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "branchmix/bnb.hpp"
#include "branchmix/bounds.hpp"
#include "branchmix/csp.hpp"
#include "branchmix/erm.hpp"
#include "branchmix/generators.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace branchmix;

namespace {

struct GenerateOpts {
  std::string domain;
  std::string out_dir;
  int count = 1;
  std::uint64_t seed = 1;
  int n = 8;
  double mu_star = 0.45;
  double gamma = 1.0;
  double a = 0.4, b = 0.45;
  int bidders = 4, goods = 6, max_bundle = 3;
  int facilities = 3, customers = 4;
  int points = 6, k = 2, dim = 2, flips = 1;
  int colors = 3;
};

struct SolveOpts {
  std::string instance;
  std::string rule = "product";
  std::string rule2;
  double mu = 0.5;
  std::string node_selection = "bestbound";
  std::string fathom = "full";
  bool partial_lp = false;
  long pivot_budget = 25;
  long max_nodes = 1000000;
  std::string dump_tree;
};

struct SweepOpts {
  std::string dir;
  std::string rule1 = "minchange";
  std::string rule2 = "maxchange";
  std::string node_selection = "bestbound";
  std::string fathom = "full";
  double kappa = 1e6;
  long max_nodes = 1000000;
  int jobs = 1;
  std::string out;           // merged sweep CSV
  std::string per_instance;  // per-instance behavior CSV
};

struct BoundsOpts {
  std::string per_instance;  // behavior CSV from `sweep`
  int n = 0;
  double kappa = 1e6;
  double delta = 0.05;
  std::string out;
};

struct CspOpts {
  std::string file;
  std::string dimacs;
  int colors = 3;
  std::string rule1 = "degdom";
  std::string rule2;
  double mu = 0.5;
  std::string preset = "hard";
  bool sweep = false;
  double kappa = 1e6;
  long max_nodes = 1000000;
  std::string out;
};

NodePolicy policy_from(const std::string& s) {
  if (s == "bestbound" || s == "bb") return NodePolicy::BestBound;
  if (s == "depthfirst" || s == "dfs") return NodePolicy::DepthFirst;
  throw std::invalid_argument("unknown node selection '" + s + "'");
}

FathomMode fathom_from(const std::string& s) {
  if (s == "full") return FathomMode::Full;
  if (s == "local") return FathomMode::LocalOnly;
  throw std::invalid_argument("unknown fathom mode '" + s + "'");
}

std::string instance_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "instance_%04d.milp", i);
  return buf;
}

int run_generate(const GenerateOpts& o) {
  fs::create_directories(o.out_dir);
  std::vector<MilpInstance> qs;
  json meta;
  meta["domain"] = o.domain;
  meta["seed"] = o.seed;
  if (o.domain == "familyF" || o.domain == "familyG") {
    FamilyParams p{o.n, o.mu_star, o.gamma};
    for (int i = 0; i < o.count; ++i)
      qs.push_back(o.domain == "familyF" ? family_F(p) : family_G(p));
    meta["n"] = o.n;
    meta["mu_star"] = o.mu_star;
    meta["gamma"] = o.gamma;
  } else if (o.domain == "mixture") {
    const MixturePair mix = worst_case_mixture(o.n, o.a, o.b, o.gamma, o.gamma);
    qs = sample_mixture(mix, o.count, o.seed);
    meta["n"] = o.n;
    meta["a"] = o.a;
    meta["b"] = o.b;
  } else if (o.domain == "jeroslow") {
    for (int i = 0; i < o.count; ++i) qs.push_back(jeroslow(o.n));
    meta["n"] = o.n;
  } else if (o.domain == "knapsack") {
    for (int i = 0; i < o.count; ++i) qs.push_back(knapsack_example());
  } else if (o.domain == "wdp") {
    for (int i = 0; i < o.count; ++i)
      qs.push_back(gen_winner_determination(o.bidders, o.goods, o.max_bundle,
                                            o.seed + i));
    meta["bidders"] = o.bidders;
    meta["goods"] = o.goods;
    meta["max_bundle"] = o.max_bundle;
  } else if (o.domain == "facility") {
    for (int i = 0; i < o.count; ++i)
      qs.push_back(gen_facility_location(o.facilities, o.customers, o.seed + i));
    meta["facilities"] = o.facilities;
    meta["customers"] = o.customers;
  } else if (o.domain == "kmeans") {
    for (int i = 0; i < o.count; ++i)
      qs.push_back(gen_kmeans(o.points, o.k, o.seed + i));
    meta["points"] = o.points;
    meta["k"] = o.k;
  } else if (o.domain == "linsep") {
    for (int i = 0; i < o.count; ++i)
      qs.push_back(gen_linear_separator(o.points, o.dim, o.flips, o.seed + i));
    meta["points"] = o.points;
    meta["dim"] = o.dim;
    meta["flips"] = o.flips;
  } else if (o.domain == "coloring") {
    // CSP domain: a random graph per instance, written in CSP text form.
    std::vector<std::string> files;
    std::mt19937_64 eng(o.seed);
    for (int i = 0; i < o.count; ++i) {
      std::vector<std::pair<int, int>> edges;
      for (int u = 0; u < o.n; ++u)
        for (int v = u + 1; v < o.n; ++v)
          if ((eng() >> 11) * 0x1.0p-53 < 0.5) edges.emplace_back(u, v);
      const CspInstance inst = graph_coloring(o.n, edges, o.colors);
      char buf[32];
      std::snprintf(buf, sizeof buf, "instance_%04d.csp", i);
      std::ofstream f(fs::path(o.out_dir) / buf, std::ios::binary);
      f << csp_to_text(inst);
      files.push_back(buf);
    }
    meta["n"] = o.n;
    meta["colors"] = o.colors;
    meta["files"] = files;
    std::ofstream mf(fs::path(o.out_dir) / "manifest.json");
    mf << meta.dump(2) << '\n';
    std::cout << "wrote " << o.count << " coloring instance(s) to " << o.out_dir
              << '\n';
    return 0;
  } else {
    throw std::invalid_argument("unknown domain '" + o.domain + "'");
  }

  std::vector<std::string> files;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const std::string name = instance_name(static_cast<int>(i));
    save_instance(qs[i], (fs::path(o.out_dir) / name).string());
    files.push_back(name);
  }
  meta["files"] = files;
  std::ofstream mf(fs::path(o.out_dir) / "manifest.json");
  mf << meta.dump(2) << '\n';
  std::cout << "wrote " << qs.size() << " instance(s) to " << o.out_dir << '\n';
  return 0;
}

int run_solve(const SolveOpts& o) {
  const MilpInstance q = load_instance(o.instance);
  BnbConfig cfg;
  cfg.node_policy = policy_from(o.node_selection);
  cfg.fathom_mode = fathom_from(o.fathom);
  cfg.partial_lp = o.partial_lp;
  cfg.lp_pivot_budget = o.pivot_budget;
  cfg.max_nodes = o.max_nodes;
  ScoringSpec spec = o.rule2.empty()
                         ? ScoringSpec::single(rule_from_name(o.rule))
                         : ScoringSpec::pair(rule_from_name(o.rule),
                                             rule_from_name(o.rule2), o.mu);
  const BnbResult r = bnb_run(q, spec, cfg);
  std::cout << "nodes " << r.tree.size() << '\n';
  std::cout << "fingerprint " << r.tree.fingerprint() << '\n';
  if (r.tree.node_cap_hit) std::cout << "node_cap_hit 1\n";
  if (r.optimum)
    std::cout << "optimum " << *r.optimum << '\n';
  else
    std::cout << "optimum none\n";
  if (!o.dump_tree.empty()) {
    std::ofstream f(o.dump_tree, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + o.dump_tree + "'");
    r.tree.dump(f);
  }
  return 0;
}

std::vector<fs::path> milp_files(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".milp") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("no .milp instances in '" + dir + "'");
  return files;
}

std::vector<PiecewiseCost> sweep_dataset(const SweepOpts& o,
                                         std::vector<fs::path>& files) {
  files = milp_files(o.dir);
  BnbConfig cfg;
  cfg.node_policy = policy_from(o.node_selection);
  cfg.fathom_mode = fathom_from(o.fathom);
  cfg.max_nodes = o.max_nodes;
  const ScoreRule r1 = rule_from_name(o.rule1);
  const ScoreRule r2 = rule_from_name(o.rule2);

  std::vector<PiecewiseCost> dataset(files.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  const int jobs = std::max(1, o.jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= dataset.size()) return;
        try {
          const MilpInstance q = load_instance(files[i].string());
          dataset[i] = milp_behaviors(q, r1, r2, cfg, o.kappa);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return dataset;
}

int run_sweep(const SweepOpts& o, bool erm_only) {
  std::vector<fs::path> files;
  const std::vector<PiecewiseCost> dataset = sweep_dataset(o, files);
  const ErmResult res = erm_minimize(dataset);
  if (!o.per_instance.empty()) {
    std::ofstream f(o.per_instance, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + o.per_instance + "'");
    bool header = true;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      write_behavior_csv(f, files[i].stem().string(), dataset[i], header);
      header = false;
    }
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + o.out + "'");
    write_sweep_csv(f, res.cells);
  }
  if (!erm_only) {
    for (const SweepCell& c : res.cells)
      std::cout << "cell [" << c.lo << ',' << c.hi << "] avg " << c.avg_cost
                << '\n';
  }
  std::cout << "mu_hat " << res.mu_hat << '\n';
  std::cout << "argmin_interval [" << res.lo << ',' << res.hi << "]\n";
  std::cout << "min_avg_cost " << res.min_avg_cost << '\n';
  return 0;
}

int run_bounds(const BoundsOpts& o) {
  if (o.n <= 0) throw std::invalid_argument("--n must be positive");
  std::ifstream f(o.per_instance);
  if (!f) throw std::runtime_error("cannot open '" + o.per_instance + "'");
  // Rebuild per-instance piecewise costs from the behavior CSV.
  std::map<std::string, PiecewiseCost> per;
  std::vector<std::string> order;
  std::string line;
  std::getline(f, line);  // header
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string id, tok;
    BehaviorPiece p;
    std::getline(ls, id, ',');
    std::getline(ls, tok, ',');
    p.lo = std::stod(tok);
    std::getline(ls, tok, ',');
    p.hi = std::stod(tok);
    std::getline(ls, tok, ',');
    p.cost = std::stod(tok);
    std::getline(ls, tok, ',');
    p.fingerprint = std::stoull(tok);
    if (!per.count(id)) order.push_back(id);
    per[id].pieces.push_back(p);
  }
  if (order.empty()) throw std::runtime_error("behavior CSV has no rows");

  std::ostream* os = &std::cout;
  std::ofstream fout;
  if (!o.out.empty()) {
    fout.open(o.out, std::ios::binary);
    if (!fout) throw std::runtime_error("cannot open '" + o.out + "'");
    os = &fout;
  }
  *os << "m,worstcase,datadep\n";
  for (std::size_t m = 1; m <= order.size(); ++m) {
    std::vector<PiecewiseCost> prefix;
    std::vector<double> cuts{0.0, 1.0};
    for (std::size_t i = 0; i < m; ++i) {
      prefix.push_back(per[order[i]]);
      for (const BehaviorPiece& p : prefix.back().pieces) {
        if (p.lo > 0 && p.lo < 1) cuts.push_back(p.lo);
        if (p.hi > 0 && p.hi < 1) cuts.push_back(p.hi);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // One achievable cost vector per parameter cell.
    std::vector<std::vector<double>> vectors;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
      std::vector<double> v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = prefix[i].cost_at(mid);
      if (std::find(vectors.begin(), vectors.end(), v) == vectors.end())
        vectors.push_back(std::move(v));
    }
    const double wc = rad_worstcase(o.n, static_cast<long>(m), o.kappa);
    const RadResult dd = rad_datadep(vectors, static_cast<long>(m));
    *os << m << ',' << gen_bound_rad(wc, static_cast<long>(m), o.kappa, o.delta)
        << ',' << gen_bound_rad(dd.value, static_cast<long>(m), o.kappa, o.delta)
        << '\n';
    if (m == order.size()) {  // labeled summary at the full sample size
      const long lm = static_cast<long>(m);
      const long nvec = static_cast<long>(vectors.size());
      const long pd = pdim_pathwise(o.n);
      const auto row = [](const std::string& name, const std::string& inputs,
                          double value, const char* kind) {
        std::printf("%-24s %-40s %-14.6g %s\n", name.c_str(), inputs.c_str(),
                    value, kind);
      };
      std::printf("%-24s %-40s %-14s %s\n", "bound", "inputs", "value", "kind");
      row("pdim_pathwise", "n=" + std::to_string(o.n), static_cast<double>(pd),
          "up-to-constant");
      row("gen_bound_pdim",
          "pdim=" + std::to_string(pd) + " m=" + std::to_string(lm) +
              " kappa=" + std::to_string(o.kappa) + " delta=" + std::to_string(o.delta),
          gen_bound_pdim(static_cast<double>(pd), lm, o.kappa, o.delta),
          "up-to-constant");
      row("rad_worstcase",
          "n=" + std::to_string(o.n) + " m=" + std::to_string(lm) +
              " kappa=" + std::to_string(o.kappa),
          wc, "exact");
      row("rad_datadep",
          "m=" + std::to_string(lm) + " vectors=" + std::to_string(nvec),
          dd.value, dd.converged ? "exact" : "exact (not converged)");
      row("massart_bound",
          "N=" + std::to_string(nvec) + " m=" + std::to_string(lm) +
              " c=" + std::to_string(o.kappa),
          massart_bound(nvec, lm, o.kappa), "exact");
      row("gen_bound_rad(worst)",
          "erad=worstcase delta=" + std::to_string(o.delta),
          gen_bound_rad(wc, lm, o.kappa, o.delta), "exact");
      row("gen_bound_rad(data)",
          "erad=datadep delta=" + std::to_string(o.delta),
          gen_bound_rad(dd.value, lm, o.kappa, o.delta), "exact");
    }
  }
  return 0;
}

int run_csp(const CspOpts& o) {
  CspInstance inst;
  if (!o.file.empty()) {
    inst = load_csp(o.file);
  } else if (!o.dimacs.empty()) {
    const auto [n, edges] = load_dimacs_graph(o.dimacs);
    inst = graph_coloring(n, edges, o.colors);
  } else {
    throw std::invalid_argument("csp needs --file or --dimacs");
  }
  CspConfig cfg;
  cfg.preset = o.preset == "none" ? CspFathomPreset::None : CspFathomPreset::Hard;
  cfg.max_nodes = o.max_nodes;
  const CspRule r1 = csp_rule_from_name(o.rule1);
  if (o.sweep) {
    if (o.rule2.empty())
      throw std::invalid_argument("--sweep needs --rule2");
    const PiecewiseCost pc =
        csp_behaviors(inst, r1, csp_rule_from_name(o.rule2), cfg, o.kappa);
    std::ostream* os = &std::cout;
    std::ofstream fout;
    if (!o.out.empty()) {
      fout.open(o.out, std::ios::binary);
      os = &fout;
    }
    write_behavior_csv(*os, o.file.empty() ? o.dimacs : o.file, pc);
    return 0;
  }
  const CspScoringSpec spec =
      o.rule2.empty() ? CspScoringSpec::single(r1)
                      : CspScoringSpec::pair(r1, csp_rule_from_name(o.rule2), o.mu);
  const CspResult r = csp_run(inst, spec, cfg);
  std::cout << "nodes " << r.tree.size() << '\n';
  if (r.best && (cfg.preset == CspFathomPreset::None ||
                 r.best_satisfied == inst.constraints.size())) {
    std::cout << "solution";
    for (int v = 0; v < inst.num_vars(); ++v)
      std::cout << ' ' << inst.var_names[v] << '='
                << inst.value_names[v][(*r.best)[v]];
    std::cout << '\n';
    std::cout << "satisfied " << r.best_satisfied << '/'
              << inst.constraints.size() << '\n';
  } else {
    std::cout << "solution none\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"branch-and-bound variable-selection toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  GenerateOpts g;
  auto* cg = app.add_subcommand("generate", "write instance files");
  cg->add_option("--domain", g.domain,
                 "wdp|facility|kmeans|linsep|familyF|familyG|mixture|knapsack|"
                 "jeroslow|coloring")
      ->required();
  cg->add_option("--out", g.out_dir, "output directory")->required();
  cg->add_option("--count", g.count);
  cg->add_option("--seed", g.seed);
  cg->add_option("--n", g.n);
  cg->add_option("--mustar", g.mu_star);
  cg->add_option("--gamma", g.gamma);
  cg->add_option("--a", g.a);
  cg->add_option("--b", g.b);
  cg->add_option("--bidders", g.bidders);
  cg->add_option("--goods", g.goods);
  cg->add_option("--max-bundle", g.max_bundle);
  cg->add_option("--facilities", g.facilities);
  cg->add_option("--customers", g.customers);
  cg->add_option("--points", g.points);
  cg->add_option("--k", g.k);
  cg->add_option("--dim", g.dim);
  cg->add_option("--flips", g.flips);
  cg->add_option("--colors", g.colors);

  SolveOpts s;
  auto* cs = app.add_subcommand("solve", "run branch and bound on one instance");
  cs->add_option("instance", s.instance, "instance file")->required();
  cs->add_option("--rule", s.rule,
                 "mostfrac|linear|product|entropic|minchange|maxchange");
  cs->add_option("--rule2", s.rule2, "second rule for a mu-mixture");
  cs->add_option("--mu", s.mu, "weight on --rule (1-mu on --rule2)");
  cs->add_option("--node-selection", s.node_selection, "bestbound|depthfirst");
  cs->add_option("--fathom", s.fathom, "full|local");
  cs->add_flag("--partial-lp", s.partial_lp, "budgeted child LP solves");
  cs->add_option("--pivot-budget", s.pivot_budget);
  cs->add_option("--max-nodes", s.max_nodes);
  cs->add_option("--dump-tree", s.dump_tree, "write the tree to a file");

  SweepOpts w;
  auto* cw = app.add_subcommand("sweep", "exact mu sweep over a dataset");
  cw->add_option("--dir", w.dir, "directory of .milp instances")->required();
  cw->add_option("--rule1", w.rule1);
  cw->add_option("--rule2", w.rule2);
  cw->add_option("--node-selection", w.node_selection);
  cw->add_option("--fathom", w.fathom);
  cw->add_option("--kappa", w.kappa, "tree-size cost cap");
  cw->add_option("--max-nodes", w.max_nodes);
  cw->add_option("--jobs", w.jobs, "worker threads over instances");
  cw->add_option("--out", w.out, "merged sweep CSV (mu_lo,mu_hi,avg_tree_size)");
  cw->add_option("--per-instance", w.per_instance,
                 "behavior CSV (instance_id,lo,hi,cost,fingerprint)");

  SweepOpts e;
  auto* ce = app.add_subcommand("erm", "average-cost minimizing mu");
  ce->add_option("--dir", e.dir, "directory of .milp instances")->required();
  ce->add_option("--rule1", e.rule1);
  ce->add_option("--rule2", e.rule2);
  ce->add_option("--node-selection", e.node_selection);
  ce->add_option("--fathom", e.fathom);
  ce->add_option("--kappa", e.kappa);
  ce->add_option("--max-nodes", e.max_nodes);
  ce->add_option("--jobs", e.jobs);
  ce->add_option("--out", e.out);
  ce->add_option("--per-instance", e.per_instance);

  BoundsOpts b;
  auto* cb = app.add_subcommand("bounds", "sample-complexity curves vs m");
  cb->add_option("--per-instance", b.per_instance, "behavior CSV from sweep")
      ->required();
  cb->add_option("--n", b.n, "variable count of the instances")->required();
  cb->add_option("--kappa", b.kappa, "cost cap");
  cb->add_option("--delta", b.delta, "confidence parameter");
  cb->add_option("--out", b.out, "output CSV (m,worstcase,datadep)");

  CspOpts c;
  auto* cc = app.add_subcommand("csp", "constraint-satisfaction tree search");
  cc->add_option("--file", c.file, "CSP text file");
  cc->add_option("--dimacs", c.dimacs, "DIMACS graph, colored with --colors");
  cc->add_option("--colors", c.colors);
  cc->add_option("--rule1", c.rule1, "degdom|ddegdom|smallestdom");
  cc->add_option("--rule2", c.rule2);
  cc->add_option("--mu", c.mu);
  cc->add_option("--preset", c.preset, "hard|none");
  cc->add_flag("--sweep", c.sweep, "exact mu sweep instead of one run");
  cc->add_option("--kappa", c.kappa);
  cc->add_option("--max-nodes", c.max_nodes);
  cc->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);  // 0
  } catch (const CLI::ParseError&) {
    std::cerr << "usage error; see --help\n";
    return 2;
  }

  try {
    if (*cg) return run_generate(g);
    if (*cs) return run_solve(s);
    if (*cw) return run_sweep(w, false);
    if (*ce) return run_sweep(e, true);
    if (*cb) return run_bounds(b);
    if (*cc) return run_csp(c);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "usage error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
