#pragma once

// Exact parameter sweeps: the tree built at a mixture parameter mu is
// constant on an interval around mu (every selection is an argmax of affine
// functions of mu), so one run per interval enumerates all behaviors.
// Average-cost minimization over a dataset and a brute-force grid oracle
// sit on top.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "branchmix/bnb.hpp"
#include "branchmix/interval.hpp"

namespace branchmix {

struct MuRunOutcome {
  double cost = 0.0;
  std::uint64_t fingerprint = 0;
};

// Evaluate the parameterized search at mu; when a ledger is given, restrict
// it to the invariance interval of this run.
using MuRunner = std::function<MuRunOutcome(double mu, IntervalLedger*)>;

struct BehaviorPiece {
  double lo = 0.0;
  double hi = 1.0;
  bool lo_inclusive = true;
  bool hi_inclusive = true;
  double cost = 0.0;
  std::uint64_t fingerprint = 0;
};

struct PiecewiseCost {
  std::vector<BehaviorPiece> pieces;

  const BehaviorPiece& piece_at(double mu) const;
  double cost_at(double mu) const;
};

struct LedgerRun {
  BnbResult result;
  IntervalLedger ledger;
};

LedgerRun run_with_ledger(const MilpInstance& q, ScoreRule r1, ScoreRule r2,
                          double mu, const BnbConfig& cfg);

// Sweep mu from 0 to 1, one run per invariance interval.  eps_step nudges
// past inclusive right endpoints; intervals sharing a fingerprint merge.
PiecewiseCost enumerate_behaviors(const MuRunner& runner,
                                  double eps_step = 1e-9,
                                  long max_pieces = 100000);

// Convenience wrapper: behaviors of bnb_run over mu*(r1) + (1-mu)*(r2),
// with tree-size cost truncated at kappa.
PiecewiseCost milp_behaviors(const MilpInstance& q, ScoreRule r1, ScoreRule r2,
                             const BnbConfig& cfg, double kappa);

struct SweepCell {
  double lo = 0.0;
  double hi = 1.0;
  double avg_cost = 0.0;
};

struct ErmResult {
  double mu_hat = 0.0;      // midpoint of the minimizing cell
  double min_avg_cost = 0.0;
  double lo = 0.0;          // minimizing cell
  double hi = 1.0;
  std::vector<SweepCell> cells;
};

double avg_cost_at(const std::vector<PiecewiseCost>& dataset, double mu);
ErmResult erm_minimize(const std::vector<PiecewiseCost>& dataset);

// Brute force over a weight grid (resolution+1 points for two rules, the
// standard simplex grid in general).
struct GridPoint {
  std::vector<double> weights;
  double cost = 0.0;
  std::uint64_t fingerprint = 0;
};

using WeightRunner = std::function<MuRunOutcome(const std::vector<double>&)>;

std::vector<GridPoint> grid_sweep(const WeightRunner& runner, int num_rules,
                                  int resolution);
std::vector<GridPoint> milp_grid_sweep(const MilpInstance& q,
                                       const std::vector<ScoreRule>& rules,
                                       const BnbConfig& cfg, double kappa,
                                       int resolution);

void write_behavior_csv(std::ostream& os, const std::string& instance_id,
                        const PiecewiseCost& pc, bool header = true);
void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells,
                     bool header = true);

}  // namespace branchmix
