#include "branchmix/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace branchmix {
namespace {

constexpr double kProductFloor = 1e-6;
constexpr double kTieTol = 1e-9;

double entropy_bits(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// Objective decreases of the two children; an infeasible child counts as
// the big value so it looks maximally attractive to change-based rules.
void change_terms(const ScoreContext& ctx, const CandidateData& c,
                  double& d_down, double& d_up) {
  d_down = c.down_feasible ? ctx.parent_obj - c.down_obj : ctx.big;
  d_up = c.up_feasible ? ctx.parent_obj - c.up_obj : ctx.big;
}

double entropy_mass(const ScoreContext& ctx, const std::vector<double>& x) {
  if (x.empty()) return 0.0;  // infeasible child: empty sum
  double s = 0.0;
  for (int b : ctx.instance->binaries) s += entropy_bits(x[b]);
  return s;
}

}  // namespace

ScoreRule rule_from_name(const std::string& name) {
  if (name == "mostfrac") return ScoreRule::MostFrac;
  if (name == "linear") return ScoreRule::Linear;
  if (name == "product") return ScoreRule::Product;
  if (name == "entropic") return ScoreRule::Entropic;
  if (name == "minchange") return ScoreRule::MinChange;
  if (name == "maxchange") return ScoreRule::MaxChange;
  throw std::invalid_argument("unknown scoring rule '" + name + "'");
}

std::string rule_name(ScoreRule rule) {
  switch (rule) {
    case ScoreRule::MostFrac: return "mostfrac";
    case ScoreRule::Linear: return "linear";
    case ScoreRule::Product: return "product";
    case ScoreRule::Entropic: return "entropic";
    case ScoreRule::MinChange: return "minchange";
    default: return "maxchange";
  }
}

ScoringSpec ScoringSpec::single(ScoreRule rule) {
  return {{rule}, {1.0}, 0.5};
}

ScoringSpec ScoringSpec::pair(ScoreRule r1, ScoreRule r2, double mu) {
  return {{r1, r2}, {mu, 1.0 - mu}, 0.5};
}

double score(ScoreRule rule, const ScoreContext& ctx, std::size_t cand,
             double linear_mu) {
  const CandidateData& c = ctx.candidates.at(cand);
  double d_down, d_up;
  switch (rule) {
    case ScoreRule::MostFrac: {
      const double x = ctx.parent_x.at(c.var);
      return std::min(1.0 - x, x);
    }
    case ScoreRule::Linear:
      change_terms(ctx, c, d_down, d_up);
      return (1.0 - linear_mu) * std::max(d_up, d_down) +
             linear_mu * std::min(d_up, d_down);
    case ScoreRule::Product:
      change_terms(ctx, c, d_down, d_up);
      return std::max(d_down, kProductFloor) * std::max(d_up, kProductFloor);
    case ScoreRule::Entropic: {
      const double xi = ctx.parent_x.at(c.var);
      return -((1.0 - xi) * entropy_mass(ctx, c.down_x) +
               xi * entropy_mass(ctx, c.up_x));
    }
    case ScoreRule::MinChange:
      change_terms(ctx, c, d_down, d_up);
      return std::min(d_up, d_down);
    default:
      change_terms(ctx, c, d_down, d_up);
      return std::max(d_up, d_down);
  }
}

double combined_score(const ScoringSpec& spec, const ScoreContext& ctx,
                      std::size_t cand) {
  if (spec.rules.size() != spec.weights.size() || spec.rules.empty())
    throw std::invalid_argument("scoring spec needs matching rules and weights");
  double s = 0.0;
  for (std::size_t k = 0; k < spec.rules.size(); ++k)
    s += spec.weights[k] * score(spec.rules[k], ctx, cand, spec.linear_mu);
  return s;
}

std::size_t select_variable(const ScoringSpec& spec, const ScoreContext& ctx,
                            IntervalLedger* ledger) {
  if (ctx.candidates.empty())
    throw std::invalid_argument("no branching candidates");
  std::vector<double> total(ctx.candidates.size());
  for (std::size_t i = 0; i < ctx.candidates.size(); ++i)
    total[i] = combined_score(spec, ctx, i);

  std::size_t best = 0;
  for (std::size_t i = 1; i < ctx.candidates.size(); ++i) {
    if (total[i] > total[best] + kTieTol ||
        (total[i] > total[best] - kTieTol &&
         ctx.candidates[i].var < ctx.candidates[best].var))
      best = i;
  }

  if (ledger && spec.rules.size() == 2) {
    std::vector<double> s1(ctx.candidates.size()), s2(ctx.candidates.size());
    for (std::size_t i = 0; i < ctx.candidates.size(); ++i) {
      s1[i] = score(spec.rules[0], ctx, i, spec.linear_mu);
      s2[i] = score(spec.rules[1], ctx, i, spec.linear_mu);
    }
    // line_i(mu) = s2 + mu*(s1 - s2); the winner must stay weakly ahead,
    // strictly when the loser has the smaller variable index.
    for (std::size_t j = 0; j < ctx.candidates.size(); ++j) {
      if (j == best) continue;
      const double alpha = s2[best] - s2[j];
      const double beta = (s1[best] - s1[j]) - alpha;
      if (std::fabs(beta) <= 1e-12) continue;
      const double r = -alpha / beta;
      const bool win_tie = ctx.candidates[best].var < ctx.candidates[j].var;
      if (beta > 0)
        ledger->restrict_lo(r, win_tie);
      else
        ledger->restrict_hi(r, win_tie);
    }
  }
  return best;
}

}  // namespace branchmix
