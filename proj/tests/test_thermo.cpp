// Multiplicity counting, partition functions, the maximal inverse
// temperature beta_n, Schatten norms, and the pole coefficient.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "fockforge/thermo.hpp"

using namespace fockforge;
using std::numbers::pi;

namespace {

// independent oracle: count tuples (a_1, ..., a_k), a_i >= n, sum = m by
// exhaustive depth-first enumeration
long long enumerate_tuples(int n, int m) {
  if (m == 0) return 1;  // the empty tuple
  long long count = 0;
  const std::function<void(int)> walk = [&](int remaining) {
    if (remaining == 0) {
      ++count;
      return;
    }
    for (int a = n; a <= remaining; ++a) walk(remaining - a);
  };
  walk(m);
  return count;
}

}  // namespace

// ---------------------------------------------------------------------------
// multiplicities

TEST_CASE("multiplicity recurrence matches exhaustive enumeration") {
  for (const int n : {1, 2, 3}) {
    const auto table = multiplicities(n, 12);
    REQUIRE(table.m_max() == 12);
    CHECK(table.nu[0] == 1);
    for (int m = 1; m < n; ++m) CHECK(table.nu[m] == 0);
    for (int m = 0; m <= 12; ++m)
      CHECK(table.nu[m] == BigInt(enumerate_tuples(n, m)));
  }
}

TEST_CASE("weight-one multiplicities are binary compositions") {
  const auto table = multiplicities(1, 30);
  for (int m = 1; m <= 30; ++m) CHECK(table.nu[m] == BigInt(1) << (m - 1));
}

TEST_CASE("single-particle eigenvalue always has multiplicity one") {
  for (const int n : {1, 2, 5, 11}) CHECK(multiplicities(n, n).nu[n] == 1);
  CHECK(multiplicities(2, 4).nu[4] == 2);  // tuples (4) and (2, 2)
  CHECK_THROWS_AS(multiplicities(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(multiplicities(1, -1), std::invalid_argument);
}

TEST_CASE("weight-one generating function sums to (1-x)/(1-2x)") {
  const auto table = multiplicities(1, 40);
  for (const double x : {0.1, 0.25, 0.4}) {
    double sum = 0.0;
    double power = 1.0;
    for (int m = 0; m <= 40; ++m) {
      sum += static_cast<double>(table.nu[m]) * power;
      power *= x;
    }
    const double closed = (1.0 - x) / (1.0 - 2.0 * x);
    const double allowed =
        std::max(std::pow(2.0 * x, 40), 256 * 1e-16) * closed;
    CHECK(std::abs(sum - closed) <= allowed);
  }
}

// ---------------------------------------------------------------------------
// closed-form partition function

TEST_CASE("closed form hits the pinned values for weight one") {
  const auto finite = partition_closed(1, std::log(4.0) / (2 * pi));
  REQUIRE(finite.finite());
  CHECK(*finite.value == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(finite.q == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  const auto critical = partition_closed(1, std::log(2.0) / (2 * pi));
  CHECK_FALSE(critical.finite());
  CHECK(critical.q == doctest::Approx(1.0).epsilon(1e-12));

  const auto cold = partition_closed(1, 5.0);
  REQUIRE(cold.finite());
  CHECK(*cold.value > 1.0);
  CHECK(*cold.value - 1.0 < 1e-12);

  CHECK_THROWS_AS(partition_closed(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(partition_closed(1, -1.0), std::domain_error);
}

TEST_CASE("finiteness flips exactly across the maximal temperature") {
  for (int n = 1; n <= 4; ++n) {
    const double bn = beta_max(n);
    CHECK(partition_closed(n, 1.05 * bn).finite());
    CHECK_FALSE(partition_closed(n, 0.95 * bn).finite());
    CHECK_FALSE(partition_closed(n, bn).finite());
  }
}

// ---------------------------------------------------------------------------
// truncated partition sums

TEST_CASE("truncated sums approach the closed form with honest tail bounds") {
  const auto quarter = partition_truncated(1, std::log(4.0) / (2 * pi), 30);
  CHECK(quarter.has_bound);
  CHECK(std::abs(quarter.value - 1.5) <= 1e-8);
  CHECK(std::abs(quarter.value - 1.5) <= quarter.tail_bound);

  const auto vacuum_only = partition_truncated(1, 0.3, 0);
  CHECK(vacuum_only.value == 1.0);

  const auto crossed = partition_truncated(2, 0.1, 40);
  const auto closed = partition_closed(2, 0.1);
  REQUIRE(closed.finite());
  REQUIRE(crossed.has_bound);
  CHECK(std::abs(crossed.value - *closed.value) <= crossed.tail_bound);

  // at or below the critical temperature no bound exists
  CHECK_FALSE(partition_truncated(1, 0.9 * beta_max(1), 50).has_bound);
}

TEST_CASE("random truncations stay within their reported bounds") {
  std::mt19937_64 rng{314};
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const double beta = beta_max(n) * (1.05 + 2.0 * unif(rng));
    const int m_max = 120 + static_cast<int>(rng() % 80);
    const auto truncated = partition_truncated(n, beta, m_max);
    const auto closed = partition_closed(n, beta);
    REQUIRE(closed.finite());
    REQUIRE(truncated.has_bound);
    CHECK(std::abs(truncated.value - *closed.value) <= truncated.tail_bound);
  }
}

// ---------------------------------------------------------------------------
// maximal temperature

TEST_CASE("pinned maximal temperatures") {
  CHECK(std::abs(beta_max(1) - std::log(2.0) / (2 * pi)) <= 1e-13);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(std::abs(beta_max(2) + std::log(golden) / (2 * pi)) <= 1e-13);
  CHECK_THROWS_AS(beta_max(0), std::invalid_argument);
}

TEST_CASE("solver residuals certify the root") {
  for (const int n : {1, 2, 5, 17, 50}) {
    const auto r = beta_max_solve(n);
    CHECK(r.n == n);
    CHECK(r.x_root > 0.0);
    CHECK(r.x_root < 1.0);
    CHECK(std::abs(r.residual) <= 1e-14);
    CHECK(std::abs(std::pow(r.x_root, n) + r.x_root - 1.0) <= 1e-14);
    CHECK(r.beta == doctest::Approx(-std::log(r.x_root) / (2 * pi))
                        .epsilon(1e-15));
  }
}

TEST_CASE("maximal temperatures decrease strictly toward zero") {
  double previous = beta_max(1);
  for (int n = 2; n <= 10; ++n) {
    const double bn = beta_max(n);
    CHECK(bn < previous);
    CHECK(bn > 0.0);
    previous = bn;
  }
  CHECK(beta_max(50) < beta_max(10));
  CHECK(beta_max(10) < beta_max(2));
  CHECK(beta_max(2) < beta_max(1));
}

// ---------------------------------------------------------------------------
// Schatten norms

TEST_CASE("p-norm reduces to the trace at p = 1") {
  const double beta = 0.2;
  const auto direct = partition_closed(1, beta);
  const auto normed = schatten_norm(1, beta, 1.0);
  REQUIRE(direct.finite());
  REQUIRE(normed.finite());
  CHECK(*normed.value == doctest::Approx(*direct.value).epsilon(1e-14));
}

TEST_CASE("p-norm identity and its divergence threshold") {
  const double beta = beta_max(1) * 1.5;
  const auto two = schatten_norm(1, beta, 2.0);
  REQUIRE(two.finite());
  const auto doubled = partition_closed(1, 2.0 * beta);
  REQUIRE(doubled.finite());
  CHECK(*two.value * *two.value ==
        doctest::Approx(*doubled.value).epsilon(1e-12));

  // halving p pushes p*beta below the threshold
  CHECK_FALSE(schatten_norm(1, beta, 0.5).finite());

  CHECK_THROWS_AS(schatten_norm(1, -0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(schatten_norm(1, 0.2, 0.0), std::domain_error);
}

TEST_CASE("finiteness of the p-norm tracks p beta against beta_n") {
  for (const int n : {1, 2}) {
    const double bn = beta_max(n);
    for (const double beta : {0.08, 0.2}) {
      for (const double p : {0.5, 1.0, 2.0}) {
        const auto result = schatten_norm(n, beta, p);
        CHECK(result.finite() == (p * beta > bn));
        if (result.finite()) {
          const auto closed = partition_closed(n, p * beta);
          CHECK(std::pow(*result.value, p) ==
                doctest::Approx(*closed.value).epsilon(1e-12));
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// pole coefficient

TEST_CASE("pole coefficient closed form and positivity") {
  CHECK(std::abs(pole_coefficient(1) - 1.0 / (4 * pi)) <= 1e-13);
  for (int n = 1; n <= 10; ++n) CHECK(pole_coefficient(n) > 0.0);
}

TEST_CASE("pole coefficient matches a finite-difference derivative") {
  const int n = 2;
  const double bn = beta_max(n);
  const auto q_of = [n](double beta) {
    const double x = std::exp(-2 * pi * beta);
    return std::pow(x, n) / (1.0 - x);
  };
  const double step = 1e-5;
  const double qprime = (q_of(bn + step) - q_of(bn - step)) / (2.0 * step);
  CHECK(std::abs(pole_coefficient(n) + 1.0 / qprime) <= 1e-6);
}

TEST_CASE("trace scaled by the distance to the pole recovers the residue") {
  const double b1 = beta_max(1);
  const double c1 = pole_coefficient(1);
  for (int k = 3; k <= 6; ++k) {
    const double delta = std::pow(10.0, -k);
    const auto near = partition_closed(1, b1 + delta);
    REQUIRE(near.finite());
    CHECK(std::abs(delta * *near.value - c1) <= 1.2 * delta);
  }
}
