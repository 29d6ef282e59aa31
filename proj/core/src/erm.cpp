#include "branchmix/erm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace branchmix {
namespace {

constexpr double kEdgeTol = 1e-9;  // boundary matching in lookups

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void simplex_grid(int d, int resolution, int pos, int left,
                  std::vector<int>& parts,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (pos == d - 1) {
    parts[pos] = left;
    emit(parts);
    return;
  }
  for (int k = 0; k <= left; ++k) {
    parts[pos] = k;
    simplex_grid(d, resolution, pos + 1, left - k, parts, emit);
  }
}

}  // namespace

const BehaviorPiece& PiecewiseCost::piece_at(double mu) const {
  for (const BehaviorPiece& p : pieces) {
    if (mu < p.lo - kEdgeTol || mu > p.hi + kEdgeTol) continue;
    const bool at_lo = std::fabs(mu - p.lo) <= kEdgeTol;
    const bool at_hi = std::fabs(mu - p.hi) <= kEdgeTol;
    if (at_hi && !p.hi_inclusive && std::fabs(p.hi - p.lo) > kEdgeTol) continue;
    if (at_lo && !p.lo_inclusive && std::fabs(p.hi - p.lo) > kEdgeTol) continue;
    return p;
  }
  // Fall back to nearest piece (mu outside [0,1] by rounding).
  if (!pieces.empty()) {
    if (mu <= pieces.front().lo) return pieces.front();
    if (mu >= pieces.back().hi) return pieces.back();
  }
  throw std::invalid_argument("mu not covered by any behavior piece");
}

double PiecewiseCost::cost_at(double mu) const { return piece_at(mu).cost; }

LedgerRun run_with_ledger(const MilpInstance& q, ScoreRule r1, ScoreRule r2,
                          double mu, const BnbConfig& cfg) {
  LedgerRun out;
  out.result = bnb_run(q, ScoringSpec::pair(r1, r2, mu), cfg, &out.ledger);
  return out;
}

PiecewiseCost enumerate_behaviors(const MuRunner& runner, double eps_step,
                                  long max_pieces) {
  PiecewiseCost pc;
  double cur = 0.0;
  double step = eps_step;
  for (long iter = 0; iter < max_pieces; ++iter) {
    IntervalLedger led;
    const MuRunOutcome out = runner(cur, &led);
    // A probe can land inside the numerically thin tie band around a
    // crossing, where the selection tie rule kicks in and the reported
    // interval collapses to (at most) a point already covered.  Such runs
    // describe a zero-measure sliver; step past them instead of recording.
    if (!pc.pieces.empty()) {
      const double prev_hi = pc.pieces.back().hi;
      const bool prev_inc = pc.pieces.back().hi_inclusive;
      const bool extends = led.hi > prev_hi ||
                           (led.hi == prev_hi && led.hi_inclusive && !prev_inc);
      if (!extends || led.empty()) {
        step *= 2.0;
        cur += step;
        if (cur >= 1.0) {
          pc.pieces.back().hi = 1.0;
          pc.pieces.back().hi_inclusive = true;
          return pc;
        }
        continue;
      }
      step = eps_step;
    }
    BehaviorPiece piece;
    piece.lo = pc.pieces.empty() ? 0.0 : pc.pieces.back().hi;
    piece.lo_inclusive =
        pc.pieces.empty() ? true : !pc.pieces.back().hi_inclusive;
    piece.hi = std::min(led.hi, 1.0);
    piece.hi_inclusive = led.hi >= 1.0 ? true : led.hi_inclusive;
    piece.cost = out.cost;
    piece.fingerprint = out.fingerprint;

    if (!pc.pieces.empty() &&
        pc.pieces.back().fingerprint == piece.fingerprint) {
      pc.pieces.back().hi = piece.hi;
      pc.pieces.back().hi_inclusive = piece.hi_inclusive;
    } else {
      pc.pieces.push_back(piece);
    }

    const BehaviorPiece& last = pc.pieces.back();
    if (last.hi >= 1.0) return pc;
    double next = last.hi_inclusive ? last.hi + eps_step : last.hi;
    if (next <= cur) next = cur + eps_step;  // numerical stall guard
    if (next > 1.0) {
      pc.pieces.back().hi = 1.0;
      pc.pieces.back().hi_inclusive = true;
      return pc;
    }
    cur = next;
  }
  throw std::runtime_error("behavior enumeration exceeded the piece limit");
}

PiecewiseCost milp_behaviors(const MilpInstance& q, ScoreRule r1, ScoreRule r2,
                             const BnbConfig& cfg, double kappa) {
  return enumerate_behaviors([&](double mu, IntervalLedger* led) {
    const BnbResult r = bnb_run(q, ScoringSpec::pair(r1, r2, mu), cfg, led);
    return MuRunOutcome{cost_tree_size(r.tree, kappa), r.tree.fingerprint()};
  });
}

double avg_cost_at(const std::vector<PiecewiseCost>& dataset, double mu) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  double s = 0.0;
  for (const PiecewiseCost& pc : dataset) s += pc.cost_at(mu);
  return s / static_cast<double>(dataset.size());
}

ErmResult erm_minimize(const std::vector<PiecewiseCost>& dataset) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  std::vector<double> cuts{0.0, 1.0};
  for (const PiecewiseCost& pc : dataset)
    for (const BehaviorPiece& p : pc.pieces) {
      if (p.lo > 0.0 && p.lo < 1.0) cuts.push_back(p.lo);
      if (p.hi > 0.0 && p.hi < 1.0) cuts.push_back(p.hi);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a <= 1e-12; }),
             cuts.end());

  ErmResult res;
  res.min_avg_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    SweepCell cell{cuts[i], cuts[i + 1], 0.0};
    const double mid = 0.5 * (cell.lo + cell.hi);
    cell.avg_cost = avg_cost_at(dataset, mid);
    res.cells.push_back(cell);
    if (cell.avg_cost < res.min_avg_cost - 1e-12) {
      res.min_avg_cost = cell.avg_cost;
      res.lo = cell.lo;
      res.hi = cell.hi;
      res.mu_hat = mid;
    }
  }
  return res;
}

std::vector<GridPoint> grid_sweep(const WeightRunner& runner, int num_rules,
                                  int resolution) {
  if (num_rules < 1 || resolution < 1)
    throw std::invalid_argument("grid_sweep needs >= 1 rule and resolution");
  std::vector<GridPoint> out;
  std::vector<int> parts(num_rules);
  simplex_grid(num_rules, resolution, 0, resolution, parts,
               [&](const std::vector<int>& p) {
                 GridPoint g;
                 g.weights.resize(p.size());
                 for (std::size_t k = 0; k < p.size(); ++k)
                   g.weights[k] =
                       static_cast<double>(p[k]) / static_cast<double>(resolution);
                 const MuRunOutcome r = runner(g.weights);
                 g.cost = r.cost;
                 g.fingerprint = r.fingerprint;
                 out.push_back(std::move(g));
               });
  return out;
}

std::vector<GridPoint> milp_grid_sweep(const MilpInstance& q,
                                       const std::vector<ScoreRule>& rules,
                                       const BnbConfig& cfg, double kappa,
                                       int resolution) {
  return grid_sweep(
      [&](const std::vector<double>& w) {
        ScoringSpec spec;
        spec.rules = rules;
        spec.weights = w;
        const BnbResult r = bnb_run(q, spec, cfg);
        return MuRunOutcome{cost_tree_size(r.tree, kappa), r.tree.fingerprint()};
      },
      static_cast<int>(rules.size()), resolution);
}

void write_behavior_csv(std::ostream& os, const std::string& instance_id,
                        const PiecewiseCost& pc, bool header) {
  if (header) os << "instance_id,lo,hi,cost,fingerprint\n";
  for (const BehaviorPiece& p : pc.pieces)
    os << instance_id << ',' << fmt(p.lo) << ',' << fmt(p.hi) << ','
       << fmt(p.cost) << ',' << p.fingerprint << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells,
                     bool header) {
  if (header) os << "mu_lo,mu_hi,avg_tree_size\n";
  for (const SweepCell& c : cells)
    os << fmt(c.lo) << ',' << fmt(c.hi) << ',' << fmt(c.avg_cost) << '\n';
}

}  // namespace branchmix
