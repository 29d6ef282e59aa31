#include "branchmix/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace branchmix {
namespace {

constexpr double kDjTol = 1e-9;   // reduced-cost threshold
constexpr double kPivTol = 1e-9;  // pivot element threshold
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kIterGuard = 200000;

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (lp.lower.size() != n || lp.upper.size() != n)
    throw LpError("bound vector size does not match variable count");
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower[j] < -kFeasTol || lp.upper[j] > 1.0 + kFeasTol ||
        lp.lower[j] > lp.upper[j] + kFeasTol)
      throw LpError("variable bounds must satisfy 0 <= lo <= hi <= 1");
  }
  for (const LpRow& row : lp.rows)
    if (row.coeffs.size() != n)
      throw LpError("row coefficient count does not match variable count");
}

enum class RunOutcome { Converged, BudgetExhausted };

// Dense tableau for the bounded-variable simplex.  Nonbasic variables rest
// at one of their bounds; T is kept as B^-1 A by explicit pivoting.
struct Tableau {
  int m = 0;
  int nstruct = 0;
  int ncols = 0;
  std::vector<std::vector<double>> T;  // m rows, ncols columns
  std::vector<double> rhs;             // transformed right-hand side
  std::vector<double> lo, up, x;
  std::vector<char> is_art, at_upper, in_basis;
  std::vector<int> basis;  // basic column per row, -1 while unassigned
  bool arts_locked = false;

  int add_col(double l, double u, bool art) {
    for (auto& row : T) row.push_back(0.0);
    lo.push_back(l);
    up.push_back(u);
    x.push_back(l);
    is_art.push_back(art);
    at_upper.push_back(0);
    in_basis.push_back(0);
    return ncols++;
  }

  void pivot(int r, int q) {
    const double p = T[r][q];
    if (std::fabs(p) < kPivTol) throw LpError("degenerate pivot element");
    const double inv = 1.0 / p;
    for (int j = 0; j < ncols; ++j) T[r][j] *= inv;
    rhs[r] *= inv;
    T[r][q] = 1.0;  // kill roundoff on the pivot column
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = T[i][q];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j) T[i][j] -= f * T[r][j];
      rhs[i] -= f * rhs[r];
      T[i][q] = 0.0;
    }
  }

  // Bland's rule throughout: smallest eligible entering column, smallest
  // basic variable index among tied leaving rows.
  RunOutcome run(const std::vector<double>& cost, long budget, long& used) {
    for (long iter = 0; iter < kIterGuard; ++iter) {
      if (budget >= 0 && used >= budget) return RunOutcome::BudgetExhausted;
      std::vector<double> y(m);
      for (int r = 0; r < m; ++r) y[r] = cost[basis[r]];
      int enter = -1;
      double d_enter = 0.0;
      for (int j = 0; j < ncols; ++j) {
        if (in_basis[j] || (is_art[j] && arts_locked)) continue;
        if (up[j] - lo[j] <= kPivTol) continue;  // fixed column
        double d = cost[j];
        for (int r = 0; r < m; ++r)
          if (y[r] != 0.0) d -= y[r] * T[r][j];
        if ((!at_upper[j] && d > kDjTol) || (at_upper[j] && d < -kDjTol)) {
          enter = j;
          d_enter = d;
          break;
        }
      }
      if (enter < 0) return RunOutcome::Converged;
      (void)d_enter;
      const double dir = at_upper[enter] ? -1.0 : 1.0;
      double best_t = up[enter] - lo[enter];  // bound flip distance
      int best_r = -1;
      for (int r = 0; r < m; ++r) {
        const double a = T[r][enter] * dir;
        const int i = basis[r];
        double lim;
        if (a > kPivTol) {
          lim = (x[i] - lo[i]) / a;
        } else if (a < -kPivTol) {
          lim = up[i] == kInf ? kInf : (up[i] - x[i]) / (-a);
        } else {
          continue;
        }
        if (lim < 0.0) lim = 0.0;
        if (lim < best_t - 1e-12 ||
            (lim <= best_t + 1e-12 && best_r >= 0 && i < basis[best_r])) {
          best_t = lim;
          best_r = r;
        }
      }
      if (best_t == kInf) throw LpError("objective unbounded on feasible set");
      const double t = best_t;
      x[enter] += dir * t;
      for (int r = 0; r < m; ++r) x[basis[r]] -= dir * t * T[r][enter];
      if (best_r < 0) {
        at_upper[enter] = !at_upper[enter];
        x[enter] = at_upper[enter] ? up[enter] : lo[enter];
      } else {
        const int leave = basis[best_r];
        const double a = T[best_r][enter] * dir;
        x[leave] = a > 0 ? lo[leave] : up[leave];
        at_upper[leave] = a < 0;
        in_basis[leave] = 0;
        pivot(best_r, enter);
        basis[best_r] = enter;
        in_basis[enter] = 1;
        at_upper[enter] = 0;
      }
      ++used;
    }
    throw LpError("simplex iteration guard exceeded");
  }

  double artificial_mass() const {
    double s = 0.0;
    for (int j = 0; j < ncols; ++j)
      if (is_art[j]) s += x[j];
    return s;
  }

  // After Phase I: pin artificials at zero and relabel basic ones away
  // where a substitute column exists (redundant rows keep theirs).
  void lock_artificials() {
    for (int r = 0; r < m; ++r) {
      const int b = basis[r];
      if (!is_art[b]) continue;
      for (int j = 0; j < ncols; ++j) {
        if (is_art[j] || in_basis[j]) continue;
        if (std::fabs(T[r][j]) > 1e-7) {
          in_basis[b] = 0;
          at_upper[b] = 0;
          x[b] = 0.0;
          pivot(r, j);
          basis[r] = j;
          in_basis[j] = 1;
          at_upper[j] = 0;
          break;
        }
      }
    }
    for (int j = 0; j < ncols; ++j) {
      if (!is_art[j]) continue;
      up[j] = 0.0;
      if (!in_basis[j]) x[j] = 0.0;
    }
    arts_locked = true;
  }
};

// Shared setup: structural columns plus one slack per inequality row.
Tableau make_tableau(const LinearProgram& lp, std::vector<int>& slack_of) {
  Tableau tb;
  tb.m = static_cast<int>(lp.rows.size());
  tb.nstruct = static_cast<int>(lp.num_vars());
  tb.T.assign(tb.m, {});
  tb.rhs.assign(tb.m, 0.0);
  tb.basis.assign(tb.m, -1);
  for (int j = 0; j < tb.nstruct; ++j) tb.add_col(lp.lower[j], lp.upper[j], false);
  for (int r = 0; r < tb.m; ++r)
    for (int j = 0; j < tb.nstruct; ++j) tb.T[r][j] = lp.rows[r].coeffs[j];
  slack_of.assign(tb.m, -1);
  for (int r = 0; r < tb.m; ++r) {
    tb.rhs[r] = lp.rows[r].rhs;
    if (lp.rows[r].sense == RowSense::LessEq) {
      slack_of[r] = tb.add_col(0.0, kInf, false);
      tb.T[r][slack_of[r]] = 1.0;
    } else if (lp.rows[r].sense == RowSense::GreaterEq) {
      slack_of[r] = tb.add_col(0.0, kInf, false);
      tb.T[r][slack_of[r]] = -1.0;
    }
  }
  return tb;
}

// Residual of row r given current nonbasic values, ignoring column `skip`.
double row_residual(const Tableau& tb, int r, int skip) {
  double v = tb.rhs[r];
  for (int j = 0; j < tb.ncols; ++j) {
    if (j == skip || tb.in_basis[j]) continue;
    if (tb.x[j] != 0.0) v -= tb.T[r][j] * tb.x[j];
  }
  return v;
}

// Cover every unassigned row with its slack when the implied value is
// feasible, otherwise with a fresh artificial matching the residual sign.
void cover_rows(Tableau& tb, const std::vector<int>& slack_of) {
  for (int r = 0; r < tb.m; ++r) {
    if (tb.basis[r] >= 0) continue;
    const int s = slack_of[r];
    if (s >= 0 && !tb.in_basis[s] && std::fabs(tb.T[r][s]) > kPivTol) {
      const double v = row_residual(tb, r, s) / tb.T[r][s];
      if (v >= -kFeasTol) {
        tb.pivot(r, s);
        tb.basis[r] = s;
        tb.in_basis[s] = 1;
        tb.x[s] = std::max(v, 0.0);
        continue;
      }
    }
    const double res = row_residual(tb, r, -1);
    const int a = tb.add_col(0.0, kInf, true);
    tb.T[r][a] = res >= 0 ? 1.0 : -1.0;
    tb.pivot(r, a);
    tb.basis[r] = a;
    tb.in_basis[a] = 1;
    tb.x[a] = std::fabs(res);
  }
}

void refresh_basic_values(Tableau& tb) {
  for (int r = 0; r < tb.m; ++r) {
    const int b = tb.basis[r];
    tb.x[b] = row_residual(tb, r, b) / tb.T[r][b];
  }
}

bool basics_within_bounds(const Tableau& tb) {
  for (int r = 0; r < tb.m; ++r) {
    const int b = tb.basis[r];
    if (tb.x[b] < tb.lo[b] - kFeasTol) return false;
    if (tb.up[b] != kInf && tb.x[b] > tb.up[b] + kFeasTol) return false;
  }
  return true;
}

std::vector<double> phase_cost(const Tableau& tb, const LinearProgram& lp,
                               bool phase1) {
  std::vector<double> c(tb.ncols, 0.0);
  if (phase1) {
    for (int j = 0; j < tb.ncols; ++j)
      if (tb.is_art[j]) c[j] = -1.0;
  } else {
    for (int j = 0; j < tb.nstruct; ++j) c[j] = lp.objective[j];
  }
  return c;
}

LpSolution extract(const Tableau& tb, const LinearProgram& lp) {
  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.resize(tb.nstruct);
  sol.objective = 0.0;
  for (int j = 0; j < tb.nstruct; ++j) {
    double v = std::clamp(tb.x[j], tb.lo[j], tb.up[j]);
    if (std::fabs(v) < 1e-11) v = 0.0;
    if (std::fabs(v - 1.0) < 1e-11) v = 1.0;
    sol.x[j] = v;
    sol.objective += lp.objective[j] * v;
  }
  return sol;
}

bool needs_phase1(const Tableau& tb) {
  return tb.artificial_mass() > kFeasTol;
}

}  // namespace

LpSolution lp_solve(const LinearProgram& lp) {
  validate(lp);
  std::vector<int> slack_of;
  Tableau tb = make_tableau(lp, slack_of);
  for (int j = 0; j < tb.nstruct; ++j) tb.x[j] = tb.lo[j];
  cover_rows(tb, slack_of);
  long used = 0;
  if (needs_phase1(tb)) {
    tb.run(phase_cost(tb, lp, true), -1, used);
    if (tb.artificial_mass() > kFeasTol) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      return sol;
    }
  }
  tb.lock_artificials();
  tb.run(phase_cost(tb, lp, false), -1, used);
  return extract(tb, lp);
}

PartialSolveResult lp_partial_solve(const LinearProgram& lp,
                                    const std::vector<double>& warm_start,
                                    long max_pivots) {
  validate(lp);
  if (warm_start.size() != lp.num_vars())
    throw LpError("warm start size does not match variable count");
  PartialSolveResult res;
  if (max_pivots == 0) {
    res.sol.status = LpStatus::Optimal;
    res.sol.x = warm_start;
    res.sol.objective = 0.0;
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
      res.sol.objective += lp.objective[j] * warm_start[j];
    return res;
  }

  std::vector<int> slack_of;
  Tableau tb = make_tableau(lp, slack_of);
  for (int j = 0; j < tb.nstruct; ++j)
    tb.x[j] = std::clamp(warm_start[j], tb.lo[j], tb.up[j]);
  // Crash: interior variables must be basic; pivot each into the row where
  // it currently has the largest magnitude.
  for (int q = 0; q < tb.nstruct; ++q) {
    if (tb.x[q] <= tb.lo[q] + kFeasTol) {
      tb.x[q] = tb.lo[q];
      continue;
    }
    if (tb.x[q] >= tb.up[q] - kFeasTol) {
      tb.x[q] = tb.up[q];
      tb.at_upper[q] = 1;
      continue;
    }
    int best_r = -1;
    double best = kPivTol;
    for (int r = 0; r < tb.m; ++r) {
      if (tb.basis[r] >= 0) continue;
      if (std::fabs(tb.T[r][q]) > best) {
        best = std::fabs(tb.T[r][q]);
        best_r = r;
      }
    }
    if (best_r >= 0) {
      tb.pivot(best_r, q);
      tb.basis[best_r] = q;
      tb.in_basis[q] = 1;
    } else {
      // No row left to host it: snap to the nearest bound.
      const double mid = 0.5 * (tb.lo[q] + tb.up[q]);
      tb.at_upper[q] = tb.x[q] > mid;
      tb.x[q] = tb.at_upper[q] ? tb.up[q] : tb.lo[q];
    }
  }
  cover_rows(tb, slack_of);
  refresh_basic_values(tb);

  long uncounted = 0;
  if (needs_phase1(tb) || !basics_within_bounds(tb)) {
    if (!basics_within_bounds(tb)) {
      // Crash produced an unusable start; rebuild cold.
      tb = make_tableau(lp, slack_of);
      for (int j = 0; j < tb.nstruct; ++j) tb.x[j] = tb.lo[j];
      cover_rows(tb, slack_of);
    }
    if (needs_phase1(tb)) {
      tb.run(phase_cost(tb, lp, true), -1, uncounted);
      if (tb.artificial_mass() > kFeasTol) {
        res.sol.status = LpStatus::Infeasible;
        return res;
      }
    }
  }
  tb.lock_artificials();
  const RunOutcome out =
      tb.run(phase_cost(tb, lp, false), max_pivots, res.pivots_used);
  res.proven_optimal = out == RunOutcome::Converged;
  res.sol = extract(tb, lp);
  return res;
}

}  // namespace branchmix
