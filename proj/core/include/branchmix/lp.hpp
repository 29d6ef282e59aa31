#pragma once

// Bounded-variable primal simplex for LPs whose variables live in boxes
// inside [0,1].  Deterministic: Bland's rule everywhere, so repeated solves
// of the same data give bit-identical results.

#include <stdexcept>
#include <string>
#include <vector>

namespace branchmix {

inline constexpr double kFeasTol = 1e-7;  // feasibility tolerance
inline constexpr double kCmpTol = 1e-6;   // value comparison tolerance

enum class RowSense { LessEq, Eq, GreaterEq };

struct LpRow {
  std::vector<double> coeffs;
  RowSense sense = RowSense::LessEq;
  double rhs = 0.0;
};

// Maximization problem: max c.x  s.t. rows, lo <= x <= hi, [lo,hi] in [0,1].
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lower;  // per-variable lower bounds
  std::vector<double> upper;  // per-variable upper bounds

  std::size_t num_vars() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

struct PartialSolveResult {
  LpSolution sol;
  bool proven_optimal = false;
  long pivots_used = 0;
};

struct LpError : std::runtime_error {
  explicit LpError(const std::string& what) : std::runtime_error(what) {}
};

// Full solve via two-phase bounded simplex with Bland's rule.
LpSolution lp_solve(const LinearProgram& lp);

// Budgeted solve from a warm-start point.  With max_pivots == 0 the warm
// point's objective is reported unchanged.  If the warm point violates a row
// (e.g. after fixing a variable away from it) an uncounted Phase-I repair
// runs first; infeasible restrictions are reported as such.
PartialSolveResult lp_partial_solve(const LinearProgram& lp,
                                    const std::vector<double>& warm_start,
                                    long max_pivots);

}  // namespace branchmix
