// Conformal-Hamiltonian thermodynamics on the full Fock space over the
// lowest-weight-n irrep: exact multiplicity counting, closed-form and
// truncated partition sums, the maximal inverse temperature beta_n, Schatten
// norms, and the pole coefficient at beta_n.
//
// Throughout, x = e^{-2 pi beta} and q = x^n / (1 - x); the full trace is
// the geometric series sum_k q^k.  The trace is NOT finite for all beta > 0:
// it diverges at and below beta_n (the root of x^n + x = 1 in beta terms),
// so e^{-beta L} is trace class only above the maximal temperature and a
// split-property argument along those lines is not available.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace fockforge {

using BigInt = boost::multiprecision::cpp_int;

// nu[m] = number of tuples with entries >= n summing to m = multiplicity of
// the L-eigenvalue 2 pi m; exact integers (they grow like 2^m for n = 1).
struct MultiplicityTable {
  int n;
  std::vector<BigInt> nu;  // indices 0..m_max

  int m_max() const { return static_cast<int>(nu.size()) - 1; }
};

// Recurrence nu[m] = sum_{a=n}^{m} nu[m-a], nu[0] = 1, evaluated with a
// running prefix sum (O(m_max) big-integer additions).
MultiplicityTable multiplicities(int n, int m_max);

// Result of a closed-form partition evaluation.  status is Finite iff
// q < 1 (up to a one-ulp-scale boundary band: q within 1e-13 of 1 counts as
// divergent, so the exact threshold beta = beta_n classifies Divergent under
// floating-point evaluation); the Finite value of partition_closed is
// 1/(1-q).  Divergence is a result value, never an exception.
struct PartitionResult {
  int n;
  double beta;
  double q;
  std::optional<double> value;

  bool finite() const { return value.has_value(); }
};

PartitionResult partition_closed(int n, double beta);

// Partial sum sum_{m=0}^{m_max} nu[m] e^{-2 pi beta m}.  When beta > beta_n
// the reported tail bound is rigorous: the remainder is dominated by
// (x/y)^{m_max+1} / (1 - q(y)) for every y between x and the critical point
// x_n (since nu_m y^m <= 1/(1-q(y))), minimized over a grid of y, plus a
// floating-point summation allowance.  Below beta_n no bound exists and the
// partial sum is returned flagged has_bound = false.
struct TruncatedPartition {
  double value;
  bool has_bound;
  double tail_bound;
};

TruncatedPartition partition_truncated(int n, double beta, int m_max);

// beta_n = -ln(x_n)/(2 pi) with x_n the unique root of x^n + x = 1 in
// (0,1); bracketed bisection polished by Newton to |x^n + x - 1| <= 1e-14.
// Strictly decreasing in n with limit 0.
double beta_max(int n);

struct BetaMaxResult {
  int n;
  double beta;
  double x_root;
  double residual;
};
BetaMaxResult beta_max_solve(int n);

// ||e^{-beta L}||_p = Tr(e^{-p beta L})^{1/p}: finite iff p*beta > beta_n.
// The returned q is the governing ratio q(n, p*beta); value is the rooted
// trace (the 1/(1-q) form applies to partition_closed results only).
PartitionResult schatten_norm(int n, double beta, double p);

// c_n = lim_{beta -> beta_n+} (beta - beta_n) Tr(e^{-beta L}) = -1/q'(beta_n)
// = (1 - x_n) / (2 pi (n (1 - x_n) + x_n)); c_1 = 1/(4 pi).
double pole_coefficient(int n);

}  // namespace fockforge
