#pragma once

// Sample-complexity estimates for tuning tree-search parameters: scan-based
// pseudo-dimension caps, the matching generalization bound, and worst-case
// versus data-dependent Rademacher-style bounds.

#include <vector>

namespace branchmix {

// Smallest sample size m at which 2^m exceeds m * 2^(n(n-1)/2) * n^n + 1,
// i.e. where the single-parameter tree family can no longer shatter.
long pdim_pathwise(int n);

// Same scan for d mixture weights under a node cap: smallest m with
// 2^m > d * m^d * n^(2d(cap+1)).
long pdim_general(int n, int d, long node_cap);

// kappa * (sqrt(pdim/m) + sqrt(ln(1/delta)/m)).
double gen_bound_pdim(double pdim, long m, double kappa, double delta);

// kappa * sqrt((n^2 + 2n ln n + 2 ln m) / m).
double rad_worstcase(int n, long m, double kappa);

struct RadResult {
  double value = 0.0;
  bool converged = false;
};

// inf over lambda > 0 of (1/lambda) * ln sum_a exp((lambda*||a||_2 / m)^2 / 2),
// minimized by golden section over ln(lambda) to tolerance 1e-6.  Each entry
// of `vectors` is one achievable cost vector over the m-point sample.
RadResult rad_datadep(const std::vector<std::vector<double>>& vectors, long m);

// c * sqrt(2 ln N / m) for N distinct vectors of norm at most c * sqrt(m).
double massart_bound(long n_distinct, long m, double c);

// 2 * erad + 4 * kappa * sqrt((2/m) * ln(4/delta)).
double gen_bound_rad(double erad, long m, double kappa, double delta);

// From x < a ln x + b (a >= 1, b >= 0) conclude x < 4a ln(2a) + 2b.
double lemma_log_inversion(double a, double b);

}  // namespace branchmix
