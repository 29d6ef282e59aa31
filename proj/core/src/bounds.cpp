#include "branchmix/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace branchmix {
namespace {

constexpr long kScanCap = 100000000;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Smallest m with m > log2(target(m)) where log2(target) = base + d*log2(m);
// everything stays in log space so huge targets are fine.
long scan(long double base, long double d) {
  for (long m = 1; m <= kScanCap; ++m) {
    const long double lhs = static_cast<long double>(m);
    const long double rhs = base + d * std::log2(static_cast<long double>(m));
    if (lhs > rhs) return m;
  }
  throw std::runtime_error("pseudo-dimension scan exceeded its cap");
}

}  // namespace

long pdim_pathwise(int n) {
  require(n >= 1, "variable count must be positive");
  // 2^m > m * 2^(n(n-1)/2) * n^n + 1; the +1 only matters for tiny n where
  // a direct check is cheap.
  const long double log2_inner = 0.5L * n * (n - 1) +
                                 static_cast<long double>(n) * std::log2(static_cast<long double>(n));
  if (log2_inner < 50) {
    const long double inner = std::exp2(log2_inner);
    for (long m = 1;; ++m) {
      if (std::exp2(static_cast<long double>(m)) > m * inner + 1.0L) return m;
      if (m > kScanCap) throw std::runtime_error("scan cap exceeded");
    }
  }
  return scan(log2_inner, 1.0L);
}

long pdim_general(int n, int d, long node_cap) {
  require(n >= 1 && d >= 1 && node_cap >= 1,
          "need n >= 1, d >= 1, node_cap >= 1");
  const long double base =
      std::log2(static_cast<long double>(d)) +
      2.0L * d * (node_cap + 1) * std::log2(static_cast<long double>(n));
  return scan(base, static_cast<long double>(d));
}

double gen_bound_pdim(double pdim, long m, double kappa, double delta) {
  require(pdim >= 0 && m >= 1 && kappa > 0 && delta > 0 && delta < 1,
          "bad generalization-bound arguments");
  const double dm = static_cast<double>(m);
  return kappa * (std::sqrt(pdim / dm) + std::sqrt(std::log(1.0 / delta) / dm));
}

double rad_worstcase(int n, long m, double kappa) {
  require(n >= 1 && m >= 1 && kappa > 0, "bad worst-case bound arguments");
  const double dn = n, dm = m;
  return kappa * std::sqrt((dn * dn + 2.0 * dn * std::log(dn) +
                            2.0 * std::log(dm)) /
                           dm);
}

RadResult rad_datadep(const std::vector<std::vector<double>>& vectors, long m) {
  require(m >= 1, "sample size must be positive");
  require(!vectors.empty(), "need at least one cost vector");
  std::vector<double> sq_norms;
  sq_norms.reserve(vectors.size());
  for (const auto& a : vectors) {
    require(static_cast<long>(a.size()) == m,
            "cost vector length must equal the sample size");
    double s = 0.0;
    for (double v : a) s += v * v;
    sq_norms.push_back(s);
  }

  const double dm = static_cast<double>(m);
  const auto value_at = [&](double log_lambda) {
    const double lambda = std::exp(log_lambda);
    // log-sum-exp of lambda^2 * ||a||^2 / (2 m^2)
    double mx = -1.0;
    std::vector<double> ex(sq_norms.size());
    for (std::size_t i = 0; i < sq_norms.size(); ++i) {
      ex[i] = lambda * lambda * sq_norms[i] / (2.0 * dm * dm);
      if (ex[i] > mx) mx = ex[i];
    }
    double s = 0.0;
    for (double e : ex) s += std::exp(e - mx);
    return (mx + std::log(s)) / lambda;
  };

  double lo = std::log(1e-9), hi = std::log(1e9);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = value_at(c), fd = value_at(d);
  while (hi - lo > 1e-6) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = value_at(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = value_at(d);
    }
  }
  RadResult res;
  const double arg = 0.5 * (lo + hi);
  res.value = value_at(arg);
  if (res.value < 1e-12) res.value = 0.0;
  const bool at_edge =
      arg < std::log(1e-9) + 1e-3 || arg > std::log(1e9) - 1e-3;
  res.converged = !at_edge || res.value <= 1e-9;
  return res;
}

double massart_bound(long n_distinct, long m, double c) {
  require(n_distinct >= 1 && m >= 1 && c >= 0, "bad finite-class arguments");
  return c * std::sqrt(2.0 * std::log(static_cast<double>(n_distinct)) /
                       static_cast<double>(m));
}

double gen_bound_rad(double erad, long m, double kappa, double delta) {
  // delta up to 4 keeps ln(4/delta) nonnegative; values above 1 only arise
  // in arithmetic checks, not as real confidence levels.
  require(erad >= 0 && m >= 1 && kappa > 0 && delta > 0 && delta < 4,
          "bad generalization-bound arguments");
  return 2.0 * erad +
         4.0 * kappa * std::sqrt(2.0 / static_cast<double>(m) *
                                 std::log(4.0 / delta));
}

double lemma_log_inversion(double a, double b) {
  require(a >= 1.0 && b >= 0.0, "inversion needs a >= 1 and b >= 0");
  return 4.0 * a * std::log(2.0 * a) + 2.0 * b;
}

}  // namespace branchmix
