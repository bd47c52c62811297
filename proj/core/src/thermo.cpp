#include "fockforge/thermo.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fockforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// q within this band of 1 classifies as divergent; keeps the exact
// threshold beta = beta_n on the divergent side under rounding.
constexpr double kBoundaryBand = 1e-13;
constexpr double kRootResidual = 1e-14;

void require_weight(int n) {
  if (n < 1) throw std::invalid_argument("lowest weight n must be >= 1");
}

double ratio_q(int n, double beta) {
  // 1 - x via expm1 keeps the denominator accurate for small beta.
  return std::exp(-kTwoPi * beta * n) / (-std::expm1(-kTwoPi * beta));
}

// log(nu) from the top bits; exact enough for double-precision sums while
// never overflowing, however fast nu grows.
double log_big(const BigInt& v) {
  if (v.is_zero()) return -std::numeric_limits<double>::infinity();
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits <= 62) return std::log(v.convert_to<double>());
  const BigInt top = v >> (bits - 52);
  return std::log(top.convert_to<double>()) +
         (static_cast<double>(bits) - 52.0) * std::numbers::ln2;
}

}  // namespace

MultiplicityTable multiplicities(int n, int m_max) {
  require_weight(n);
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
  MultiplicityTable table;
  table.n = n;
  table.nu.assign(static_cast<std::size_t>(m_max) + 1, BigInt(0));
  table.nu[0] = 1;
  // nu[m] = sum_{a=n}^{m} nu[m-a] = prefix[m-n]; keep the prefix running.
  BigInt prefix = 0;  // sum of nu[0..m-n]
  for (int m = 1; m <= m_max; ++m) {
    if (m - n >= 0) prefix += table.nu[static_cast<std::size_t>(m - n)];
    table.nu[static_cast<std::size_t>(m)] = prefix;
  }
  return table;
}

PartitionResult partition_closed(int n, double beta) {
  require_weight(n);
  if (beta <= 0.0)
    throw std::domain_error("partition function requires beta > 0");
  PartitionResult result;
  result.n = n;
  result.beta = beta;
  result.q = ratio_q(n, beta);
  if (result.q < 1.0 - kBoundaryBand) result.value = 1.0 / (1.0 - result.q);
  return result;
}

TruncatedPartition partition_truncated(int n, double beta, int m_max) {
  require_weight(n);
  if (beta <= 0.0)
    throw std::domain_error("partition function requires beta > 0");
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");

  const MultiplicityTable table = multiplicities(n, m_max);
  const double log_x = -kTwoPi * beta;
  double sum = 0.0;
  for (int m = m_max; m >= 0; --m) {  // small terms first
    const BigInt& nu = table.nu[static_cast<std::size_t>(m)];
    if (nu.is_zero()) continue;
    sum += std::exp(log_big(nu) + log_x * m);
  }

  TruncatedPartition out;
  out.value = sum;
  out.has_bound = false;
  out.tail_bound = std::numeric_limits<double>::infinity();

  const double x = std::exp(log_x);
  const double x_n = beta_max_solve(n).x_root;
  if (x < x_n) {
    // Remainder <= (x/y)^{m_max+1} / (1 - q(y)) for any x < y < x_n, since
    // sum nu_m y^m = 1/(1-q(y)) dominates the shifted tail; take the best y
    // on a grid, then allow for the summation's own rounding.
    double best = std::numeric_limits<double>::infinity();
    constexpr int kGrid = 64;
    for (int i = 1; i < kGrid; ++i) {
      const double y = x + (x_n - x) * i / kGrid;
      const double qy = std::pow(y, n) / (1.0 - y);
      if (qy >= 1.0) continue;
      const double log_bound = (m_max + 1) * (std::log(x) - std::log(y)) -
                               std::log1p(-qy);
      best = std::min(best, std::exp(log_bound));
    }
    const double fp_allowance =
        4.0 * DBL_EPSILON * (m_max + 1) * std::max(1.0, std::abs(sum));
    out.has_bound = true;
    out.tail_bound = best + fp_allowance;
  }
  return out;
}

BetaMaxResult beta_max_solve(int n) {
  require_weight(n);
  // f(x) = x^n + x - 1 is strictly increasing on (0,1), f(0) = -1, f(1) = 1.
  const auto f = [n](double x) { return std::pow(x, n) + x - 1.0; };
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 8; ++iter) {
    const double fx = f(x);
    if (std::abs(fx) <= kRootResidual) break;
    const double dfx = n * std::pow(x, n - 1) + 1.0;
    x -= fx / dfx;
  }
  BetaMaxResult result;
  result.n = n;
  result.x_root = x;
  result.residual = std::abs(f(x));
  result.beta = -std::log(x) / kTwoPi;
  return result;
}

double beta_max(int n) { return beta_max_solve(n).beta; }

PartitionResult schatten_norm(int n, double beta, double p) {
  require_weight(n);
  if (beta <= 0.0) throw std::domain_error("Schatten norm requires beta > 0");
  if (p <= 0.0) throw std::domain_error("Schatten norm requires p > 0");
  const PartitionResult trace = partition_closed(n, p * beta);
  PartitionResult result;
  result.n = n;
  result.beta = beta;
  result.q = trace.q;
  if (trace.finite()) result.value = std::pow(*trace.value, 1.0 / p);
  return result;
}

double pole_coefficient(int n) {
  const double x = beta_max_solve(n).x_root;
  // q'(beta) = -2 pi (n x^n + x)/(1 - x); at the root x^n = 1 - x.
  return (1.0 - x) / (kTwoPi * (n * (1.0 - x) + x));
}

}  // namespace fockforge
