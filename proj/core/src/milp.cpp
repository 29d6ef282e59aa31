#include "branchmix/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace branchmix {
namespace {

// Shortest decimal form that parses back to the same double.
std::string fmt_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

const char* sense_name(RowSense s) {
  switch (s) {
    case RowSense::LessEq: return "le";
    case RowSense::Eq: return "eq";
    default: return "ge";
  }
}

RowSense sense_from(const std::string& s) {
  if (s == "le") return RowSense::LessEq;
  if (s == "eq") return RowSense::Eq;
  if (s == "ge") return RowSense::GreaterEq;
  throw MilpError("unknown row sense '" + s + "'");
}

}  // namespace

bool MilpInstance::is_binary(int j) const {
  return std::binary_search(binaries.begin(), binaries.end(), j);
}

double MilpInstance::big_value() const {
  double s = 0.0;
  for (double c : objective) s += std::fabs(c);
  return s + 1.0;
}

bool PartialAssignment::assigns(int var) const {
  return value_of(var).has_value();
}

std::optional<int> PartialAssignment::value_of(int var) const {
  for (const auto& [v, val] : fixed)
    if (v == var) return val;
  return std::nullopt;
}

PartialAssignment PartialAssignment::child(int var, int value) const {
  if (value != 0 && value != 1)
    throw MilpError("branch value must be 0 or 1");
  if (assigns(var))
    throw MilpError("variable already fixed on this path");
  PartialAssignment out = *this;
  out.fixed.emplace_back(var, value);
  return out;
}

void validate(const MilpInstance& q) {
  const std::size_t n = q.num_vars();
  if (n == 0) throw MilpError("instance has no variables");
  for (const LpRow& row : q.rows)
    if (row.coeffs.size() != n)
      throw MilpError("row coefficient count does not match variable count");
  int prev = -1;
  for (int b : q.binaries) {
    if (b <= prev) throw MilpError("binary indices must be sorted and distinct");
    if (b < 0 || static_cast<std::size_t>(b) >= n)
      throw MilpError("binary index out of range");
    prev = b;
  }
}

LinearProgram relaxation(const MilpInstance& q, const PartialAssignment& a) {
  validate(q);
  LinearProgram lp;
  lp.objective = q.objective;
  lp.rows = q.rows;
  lp.lower.assign(q.num_vars(), 0.0);
  lp.upper.assign(q.num_vars(), 1.0);
  for (const auto& [var, val] : a.fixed) {
    if (var < 0 || static_cast<std::size_t>(var) >= q.num_vars())
      throw MilpError("assignment fixes a variable out of range");
    if (!q.is_binary(var))
      throw MilpError("assignment fixes a non-binary variable");
    lp.lower[var] = lp.upper[var] = static_cast<double>(val);
  }
  return lp;
}

bool is_integral(const MilpInstance& q, const std::vector<double>& x) {
  if (x.size() != q.num_vars())
    throw MilpError("point size does not match variable count");
  for (int b : q.binaries) {
    const double v = x[b];
    if (std::fabs(v) > kCmpTol && std::fabs(v - 1.0) > kCmpTol) return false;
  }
  return true;
}

std::string to_text(const MilpInstance& q) {
  validate(q);
  std::ostringstream os;
  for (const std::string& c : q.comments) os << "# " << c << '\n';
  os << "n " << q.num_vars() << '\n';
  os << "obj";
  for (double c : q.objective) os << ' ' << fmt_double(c);
  os << '\n';
  for (const LpRow& row : q.rows) {
    os << "row " << sense_name(row.sense) << ' ' << fmt_double(row.rhs);
    for (double c : row.coeffs) os << ' ' << fmt_double(c);
    os << '\n';
  }
  os << "bin";
  for (int b : q.binaries) os << ' ' << b;
  os << '\n';
  return os.str();
}

MilpInstance from_text(const std::string& text) {
  MilpInstance q;
  std::istringstream is(text);
  std::string line;
  long n = -1;
  bool saw_bin = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
      q.comments.push_back(line.substr(start));
      continue;
    }
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "n") {
      if (!(ls >> n) || n <= 0) throw MilpError("bad variable count line");
    } else if (tag == "obj") {
      if (n < 0) throw MilpError("obj line before n line");
      q.objective.resize(n);
      for (long j = 0; j < n; ++j)
        if (!(ls >> q.objective[j])) throw MilpError("short obj line");
    } else if (tag == "row") {
      if (n < 0) throw MilpError("row line before n line");
      LpRow row;
      std::string sense;
      if (!(ls >> sense >> row.rhs)) throw MilpError("bad row header");
      row.sense = sense_from(sense);
      row.coeffs.resize(n);
      for (long j = 0; j < n; ++j)
        if (!(ls >> row.coeffs[j])) throw MilpError("short row line");
      q.rows.push_back(std::move(row));
    } else if (tag == "bin") {
      saw_bin = true;
      int b;
      while (ls >> b) q.binaries.push_back(b);
    } else {
      throw MilpError("unknown line tag '" + tag + "'");
    }
  }
  if (n < 0 || q.objective.empty() || !saw_bin)
    throw MilpError("instance text missing n, obj, or bin line");
  validate(q);
  return q;
}

void save_instance(const MilpInstance& q, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw MilpError("cannot open '" + path + "' for writing");
  f << to_text(q);
}

MilpInstance load_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MilpError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

}  // namespace branchmix
