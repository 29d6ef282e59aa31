#include "branchmix/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace branchmix {
namespace {

// Strict-inequality slack for the separator rows.  Must sit well above
// big_m * (binary integrality tolerance), or near-zero indicator noise can
// fake a satisfied row.
constexpr double kSepMargin = 1e-3;

// mt19937_64 with hand-rolled draw helpers so instance bytes do not depend
// on the standard library's distribution implementations.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform() { return (eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

LpRow eq_row(std::vector<double> coeffs, double rhs) {
  return LpRow{std::move(coeffs), RowSense::Eq, rhs};
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

void family_checks(const FamilyParams& p) {
  require(p.n >= 6 && p.n % 2 == 0, "family size must be even and >= 6");
  require(p.mu_star > 1.0 / 3.0 && p.mu_star < 2.0 / 3.0,
          "crossover parameter must lie in (1/3, 2/3)");
  require(p.gamma > 0.0, "objective scale must be positive");
}

// Shared constraint skeleton of the two families: a parity-infeasible block
// of n-3 variables and a parity-infeasible block of 3 variables.
void family_rows(MilpInstance& q, int n) {
  std::vector<double> big(n, 0.0), small(n, 0.0);
  for (int i = 0; i < n - 3; ++i) big[i] = 2.0;
  for (int i = n - 3; i < n; ++i) small[i] = 2.0;
  q.rows.push_back(eq_row(std::move(big), static_cast<double>(n - 3)));
  q.rows.push_back(eq_row(std::move(small), 3.0));
}

}  // namespace

MilpInstance jeroslow(int n) {
  require(n >= 3 && n % 2 == 1, "parity instance needs odd n >= 3");
  MilpInstance q;
  q.objective.assign(n, 0.0);
  q.rows.push_back(eq_row(std::vector<double>(n, 2.0), static_cast<double>(n)));
  q.binaries = iota_vec(n);
  return q;
}

MilpInstance family_F(const FamilyParams& p) {
  family_checks(p);
  const int n = p.n;
  MilpInstance q;
  q.objective.assign(n, 0.0);
  for (int i = 0; i < n - 3; ++i)
    q.objective[i] = p.gamma * static_cast<double>(i + 1);
  q.objective[n - 3] = 0.0;
  q.objective[n - 2] = p.gamma * 1.5;
  q.objective[n - 1] = p.gamma * (3.0 - 1.0 / (2.0 * p.mu_star));
  family_rows(q, n);
  q.binaries = iota_vec(n);
  return q;
}

MilpInstance family_G(const FamilyParams& p) {
  family_checks(p);
  const int n = p.n;
  const int median = (n - 4) / 2;  // middle of the n-3 block, 0-based
  MilpInstance q;
  q.objective.assign(n, 0.0);
  for (int i = 0; i < n - 3; ++i) {
    if (i < median)
      q.objective[i] = 0.0;
    else if (i == median)
      q.objective[i] = p.gamma * 1.5;
    else
      q.objective[i] = p.gamma * (3.0 - 1.0 / (2.0 * p.mu_star));
  }
  q.objective[n - 3] = p.gamma * 1.0;
  q.objective[n - 2] = p.gamma * 2.0;
  q.objective[n - 1] = p.gamma * 3.0;
  family_rows(q, n);
  q.binaries = iota_vec(n);
  return q;
}

MixturePair worst_case_mixture(int n, double a, double b, double gamma_a,
                               double gamma_b) {
  require(a > 1.0 / 3.0 && a < b && b < 0.5,
          "mixture needs 1/3 < a < b < 1/2");
  MixturePair mix;
  mix.q_a = family_G({n, a, gamma_a});
  mix.q_b = family_F({n, b, gamma_b});
  return mix;
}

std::vector<MilpInstance> sample_mixture(const MixturePair& mix, int m,
                                         std::uint64_t seed) {
  require(m >= 0, "sample count must be non-negative");
  Rng rng(seed);
  std::vector<MilpInstance> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i)
    out.push_back(rng.uniform() < 0.5 ? mix.q_a : mix.q_b);
  return out;
}

MilpInstance gen_winner_determination(int n_bidders, int n_goods,
                                      int max_bundle, std::uint64_t seed) {
  require(n_bidders >= 1 && n_goods >= 1, "need at least one bidder and good");
  require(max_bundle >= 1 && max_bundle <= n_goods,
          "bundle cap must lie in [1, n_goods]");
  Rng rng(seed);
  MilpInstance q;
  std::vector<std::vector<int>> bundle_goods;  // per bid
  std::vector<int> bid_owner;
  for (int b = 0; b < n_bidders; ++b) {
    const int n_bids = rng.uniform_int(1, 3);
    for (int k = 0; k < n_bids; ++k) {
      const int size = rng.uniform_int(1, max_bundle);
      std::vector<int> goods;
      while (static_cast<int>(goods.size()) < size) {
        const int g = rng.uniform_int(0, n_goods - 1);
        if (std::find(goods.begin(), goods.end(), g) == goods.end())
          goods.push_back(g);
      }
      std::sort(goods.begin(), goods.end());
      q.objective.push_back(rng.uniform() * static_cast<double>(size));
      bundle_goods.push_back(std::move(goods));
      bid_owner.push_back(b);
    }
  }
  const int n_vars = static_cast<int>(q.objective.size());
  for (int g = 0; g < n_goods; ++g) {
    LpRow row{std::vector<double>(n_vars, 0.0), RowSense::LessEq, 1.0};
    for (int v = 0; v < n_vars; ++v)
      if (std::find(bundle_goods[v].begin(), bundle_goods[v].end(), g) !=
          bundle_goods[v].end())
        row.coeffs[v] = 1.0;
    q.rows.push_back(std::move(row));
  }
  for (int b = 0; b < n_bidders; ++b) {
    LpRow row{std::vector<double>(n_vars, 0.0), RowSense::LessEq, 1.0};
    for (int v = 0; v < n_vars; ++v)
      if (bid_owner[v] == b) row.coeffs[v] = 1.0;
    q.rows.push_back(std::move(row));
  }
  q.binaries = iota_vec(n_vars);
  q.comments.push_back("winner determination seed=" + std::to_string(seed));
  return q;
}

MilpInstance gen_facility_location(int n_fac, int n_cust, std::uint64_t seed) {
  require(n_fac >= 1 && n_cust >= 1, "need at least one facility and customer");
  Rng rng(seed);
  const int n_vars = n_fac + n_cust * n_fac;
  const auto yvar = [&](int i, int j) { return n_fac + i * n_fac + j; };
  MilpInstance q;
  q.objective.assign(n_vars, 0.0);
  for (int j = 0; j < n_fac; ++j) q.objective[j] = -rng.uniform(0.0, 3.0e3);
  for (int i = 0; i < n_cust; ++i)
    for (int j = 0; j < n_fac; ++j)
      q.objective[yvar(i, j)] = -rng.uniform(0.0, 1.0e4);
  for (int i = 0; i < n_cust; ++i) {
    LpRow row{std::vector<double>(n_vars, 0.0), RowSense::Eq, 1.0};
    for (int j = 0; j < n_fac; ++j) row.coeffs[yvar(i, j)] = 1.0;
    q.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n_cust; ++i)
    for (int j = 0; j < n_fac; ++j) {
      LpRow row{std::vector<double>(n_vars, 0.0), RowSense::LessEq, 0.0};
      row.coeffs[yvar(i, j)] = 1.0;
      row.coeffs[j] = -1.0;
      q.rows.push_back(std::move(row));
    }
  q.binaries = iota_vec(n_fac);
  q.comments.push_back("facility location seed=" + std::to_string(seed) +
                       " (costs negated into maximization)");
  return q;
}

MilpInstance gen_kmeans(int n_points, int k, std::uint64_t seed) {
  require(n_points >= 1 && k >= 1 && k <= n_points,
          "need 1 <= k <= n_points");
  Rng rng(seed);
  const int n_vars = n_points + n_points * n_points;
  const auto yvar = [&](int i, int j) { return n_points + i * n_points + j; };
  MilpInstance q;
  q.objective.assign(n_vars, 0.0);
  for (int i = 0; i < n_points; ++i)
    for (int j = 0; j < n_points; ++j)
      if (i != j) q.objective[yvar(i, j)] = -rng.uniform();
  {
    LpRow row{std::vector<double>(n_vars, 0.0), RowSense::Eq,
              static_cast<double>(k)};
    for (int j = 0; j < n_points; ++j) row.coeffs[j] = 1.0;
    q.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n_points; ++i) {
    LpRow row{std::vector<double>(n_vars, 0.0), RowSense::Eq, 1.0};
    for (int j = 0; j < n_points; ++j) row.coeffs[yvar(i, j)] = 1.0;
    q.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n_points; ++i)
    for (int j = 0; j < n_points; ++j) {
      LpRow row{std::vector<double>(n_vars, 0.0), RowSense::LessEq, 0.0};
      row.coeffs[yvar(i, j)] = 1.0;
      row.coeffs[j] = -1.0;
      q.rows.push_back(std::move(row));
    }
  q.binaries = iota_vec(n_vars);
  q.comments.push_back("k-medoid clustering seed=" + std::to_string(seed));
  return q;
}

MilpInstance gen_linear_separator(int n_points, int dim, int n_flips,
                                  std::uint64_t seed) {
  require(n_points >= 1 && dim >= 1, "need points and a dimension");
  require(n_flips >= 0 && n_flips <= n_points, "flip count out of range");
  Rng rng(seed);
  std::vector<std::vector<double>> p(n_points, std::vector<double>(dim));
  for (auto& pt : p)
    for (double& c : pt) c = rng.gaussian();
  std::vector<double> wstar(dim);
  for (double& c : wstar) c = rng.gaussian();
  std::vector<double> z(n_points);
  for (int i = 0; i < n_points; ++i) {
    double dot = 0.0;
    for (int kk = 0; kk < dim; ++kk) dot += wstar[kk] * p[i][kk];
    z[i] = dot >= 0.0 ? 1.0 : -1.0;
  }
  std::vector<int> order = iota_vec(n_points);
  for (int i = n_points - 1; i > 0; --i)
    std::swap(order[i], order[rng.uniform_int(0, i)]);
  for (int f = 0; f < n_flips; ++f) z[order[f]] = -z[order[f]];

  double big_m = 0.0;
  for (const auto& pt : p) {
    double l1 = 0.0;
    for (double c : pt) l1 += std::fabs(c);
    big_m = std::max(big_m, l1);
  }
  big_m += 1.0;

  // Variables: n_points mislabel indicators, then u with w = 2u - 1.
  const int n_vars = n_points + dim;
  MilpInstance q;
  q.objective.assign(n_vars, 0.0);
  for (int i = 0; i < n_points; ++i) q.objective[i] = -1.0;
  for (int i = 0; i < n_points; ++i) {
    LpRow row{std::vector<double>(n_vars, 0.0), RowSense::GreaterEq, 0.0};
    double shift = 0.0;
    for (int kk = 0; kk < dim; ++kk) {
      row.coeffs[n_points + kk] = 2.0 * z[i] * p[i][kk];
      shift += z[i] * p[i][kk];
    }
    row.coeffs[i] = big_m;
    row.rhs = kSepMargin + shift;
    q.rows.push_back(std::move(row));
  }
  q.binaries = iota_vec(n_points);
  q.comments.push_back("linear separator seed=" + std::to_string(seed) +
                       "; weight map w = 2u - 1 over u in [0,1]^" +
                       std::to_string(dim));
  return q;
}

MilpInstance knapsack_example() {
  MilpInstance q;
  q.objective = {40, 60, 10, 10, 3, 20, 60};
  q.rows.push_back(
      {{40, 50, 30, 10, 10, 40, 30}, RowSense::LessEq, 100.0});
  q.binaries = iota_vec(7);
  return q;
}

}  // namespace branchmix
