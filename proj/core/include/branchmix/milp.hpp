#pragma once

// Mixed binary programs over [0,1]-box variables: instance model, partial
// assignments produced by branching, induced LP relaxations, and a plain
// text file format with bit-exact round-tripping.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "branchmix/lp.hpp"

namespace branchmix {

// Maximization instance; variables listed in `binaries` are 0/1, the rest
// are continuous in [0,1].
struct MilpInstance {
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<int> binaries;            // sorted, distinct indices
  std::vector<std::string> comments;    // '#' header lines, preserved verbatim

  std::size_t num_vars() const { return objective.size(); }
  bool is_binary(int j) const;
  // B used as the score difference for infeasible children: ||c||_1 + 1.
  double big_value() const;
};

struct MilpError : std::runtime_error {
  explicit MilpError(const std::string& what) : std::runtime_error(what) {}
};

// Branching decisions along a path: var -> 0/1, in branch order.
struct PartialAssignment {
  std::vector<std::pair<int, int>> fixed;

  bool assigns(int var) const;
  std::optional<int> value_of(int var) const;
  PartialAssignment child(int var, int value) const;  // throws on re-fixing
};

void validate(const MilpInstance& q);

// LP relaxation induced by an assignment: binaries relax to [0,1], fixed
// variables get point bounds.
LinearProgram relaxation(const MilpInstance& q, const PartialAssignment& a);

// True when every binary variable is within 1e-6 of 0 or 1.
bool is_integral(const MilpInstance& q, const std::vector<double>& x);

std::string to_text(const MilpInstance& q);
MilpInstance from_text(const std::string& text);
void save_instance(const MilpInstance& q, const std::string& path);
MilpInstance load_instance(const std::string& path);

}  // namespace branchmix
