// Real subspaces of C^d: symplectic complement, standardness, Tomita data,
// modular flow invariance, and generator-level twisted duality.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "fockforge/fock.hpp"
#include "fockforge/standard_subspace.hpp"
#include "fockforge/verify.hpp"

using namespace fockforge;
using std::numbers::pi;
using Cplx = std::complex<double>;

namespace {

Eigen::VectorXcd gaussian_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Cplx{re, im};
  }
  return v;
}

Eigen::VectorXcd single(Cplx value) {
  Eigen::VectorXcd v(1);
  v(0) = value;
  return v;
}

// test-local real coordinates (Re v1, ..., Re vd, Im v1, ..., Im vd),
// independent of the library's realification layout
Eigen::VectorXd real_coords(const Eigen::VectorXcd& v) {
  const int d = static_cast<int>(v.size());
  Eigen::VectorXd r(2 * d);
  for (int i = 0; i < d; ++i) {
    r(i) = v(i).real();
    r(d + i) = v(i).imag();
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// realification

TEST_CASE("realify and complexify are mutually inverse") {
  auto rng = std::mt19937_64{11};
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = gaussian_vector(4, rng);
    const Eigen::VectorXd r = realify(v);
    REQUIRE(r.size() == 8);
    CHECK((complexify(r) - v).norm() <= 1e-15);
    CHECK(r.norm() == doctest::Approx(v.norm()).epsilon(1e-14));
  }
}

// ---------------------------------------------------------------------------
// symplectic complement

TEST_CASE("one-dimensional complements") {
  const auto real_line = RealSubspace::from_generators(1, {single(1.0)});
  const auto prime = symplectic_complement(real_line);
  CHECK(prime.real_dim() == 1);
  CHECK(prime.contains(single(1.0)));
  CHECK_FALSE(prime.contains(single(Cplx{0.0, 1.0})));

  const auto whole =
      RealSubspace::from_generators(1, {single(1.0), single(Cplx{0.0, 1.0})});
  CHECK(whole.real_dim() == 2);
  CHECK(symplectic_complement(whole).real_dim() == 0);
}

TEST_CASE("double complement returns the original subspace") {
  auto rng = std::mt19937_64{21};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Eigen::VectorXcd> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(gaussian_vector(3, rng));
    const auto h = RealSubspace::from_generators(3, gens);
    const auto prime = symplectic_complement(h);
    CHECK(h.real_dim() + prime.real_dim() == 6);
    const auto second = symplectic_complement(prime);
    CHECK(subspace_defect(h.basis(), second.basis()) <= 1e-10);
  }
}

// ---------------------------------------------------------------------------
// standardness

TEST_CASE("standardness classifies the canonical small cases") {
  const auto real_line = RealSubspace::from_generators(1, {single(1.0)});
  const auto report = is_standard(real_line);
  CHECK(report.standard);
  CHECK(report.real_dim == 1);
  CHECK(report.rank_sum == 2);
  CHECK(report.dim_intersection == 0);

  const auto whole =
      RealSubspace::from_generators(1, {single(1.0), single(Cplx{0.0, 1.0})});
  const auto whole_report = is_standard(whole);
  CHECK_FALSE(whole_report.standard);
  CHECK(whole_report.dim_intersection == 2);

  Eigen::VectorXcd g1 = Eigen::VectorXcd::Zero(2);
  Eigen::VectorXcd g2 = Eigen::VectorXcd::Zero(2);
  g1(0) = 1.0;
  g2(1) = 1.0;
  CHECK(is_standard(RealSubspace::from_generators(2, {g1, g2})).standard);

  // a complex line inside C^2 is not dense as a real subspace
  Eigen::VectorXcd g3 = Eigen::VectorXcd::Zero(2);
  g3(0) = Cplx{0.0, 1.0};
  const auto thin = is_standard(RealSubspace::from_generators(2, {g1, g3}));
  CHECK_FALSE(thin.standard);
  CHECK(thin.rank_sum == 2);
}

// ---------------------------------------------------------------------------
// Tomita data

TEST_CASE("the real line has trivial modular data") {
  const auto h = RealSubspace::from_generators(1, {single(1.0)});
  const auto td = tomita(h);
  CHECK(std::abs(td.delta(0, 0) - Cplx{1.0, 0.0}) <= 1e-12);
  CHECK(std::abs(td.j_unitary(0, 0) - Cplx{1.0, 0.0}) <= 1e-12);
  const auto v = single(Cplx{2.0, 3.0});
  CHECK((td.apply_s(v) - single(Cplx{2.0, -3.0})).norm() <= 1e-12);
  CHECK((td.apply_j(v) - single(Cplx{2.0, -3.0})).norm() <= 1e-12);
  CHECK(modular_flow_check(h, {0.1, 1.0, 10.0}) <= 1e-12);
}

TEST_CASE("tomita rejects non-standard subspaces") {
  const auto whole =
      RealSubspace::from_generators(1, {single(1.0), single(Cplx{0.0, 1.0})});
  CHECK_THROWS_AS(tomita(whole), std::invalid_argument);
}

TEST_CASE("tilted plane matches a dense real-linear oracle") {
  // H = span_R{(1,0), (i cos t, i sin t)} at t = pi/4: build the anti-linear
  // involution directly as a real 4x4 matrix and compare spectra
  const double c = std::cos(pi / 4);
  const double s = std::sin(pi / 4);
  Eigen::VectorXcd b1 = Eigen::VectorXcd::Zero(2);
  Eigen::VectorXcd b2 = Eigen::VectorXcd::Zero(2);
  b1(0) = 1.0;
  b2(0) = Cplx{0.0, c};
  b2(1) = Cplx{0.0, s};
  const auto h = RealSubspace::from_generators(2, {b1, b2});
  REQUIRE(is_standard(h).standard);

  const Cplx iu{0.0, 1.0};
  Eigen::MatrixXd frame(4, 4);
  frame.col(0) = real_coords(b1);
  frame.col(1) = real_coords(b2);
  frame.col(2) = real_coords(iu * b1);
  frame.col(3) = real_coords(iu * b2);
  Eigen::Vector4d signs;
  signs << 1.0, 1.0, -1.0, -1.0;
  const Eigen::MatrixXd s_real =
      frame * signs.asDiagonal() * frame.inverse();
  const Eigen::MatrixXd delta_real = s_real.transpose() * s_real;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(delta_real);
  REQUIRE(es.info() == Eigen::Success);
  const Eigen::VectorXd oracle = es.eigenvalues();  // ascending, doubled

  const auto td = tomita(h);
  REQUIRE(td.delta_eigenvalues.size() == 2);
  // the real representation doubles each complex eigenvalue
  CHECK(oracle(0) == doctest::Approx(oracle(1)).epsilon(1e-10));
  CHECK(oracle(2) == doctest::Approx(oracle(3)).epsilon(1e-10));
  CHECK(td.delta_eigenvalues(0) == doctest::Approx(oracle(0)).epsilon(1e-10));
  CHECK(td.delta_eigenvalues(1) == doctest::Approx(oracle(2)).epsilon(1e-10));
  CHECK(td.delta_eigenvalues(0) * td.delta_eigenvalues(1) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // the library S agrees with the oracle matrix on random vectors
  auto rng = std::mt19937_64{33};
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = gaussian_vector(2, rng);
    const Eigen::VectorXd lhs = real_coords(td.apply_s(v));
    const Eigen::VectorXd rhs = s_real * real_coords(v);
    CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("modular identities hold on seeded standard subspaces") {
  for (const int d : {1, 2, 3}) {
    CAPTURE(d);
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      const auto h = well_conditioned_standard_subspace(d, seed);
      const auto td = tomita(h);
      const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);

      // S fixes the subspace pointwise and squares to the identity
      for (const auto& g : h.generators())
        CHECK((td.apply_s(g) - g).norm() <= 1e-10 * (1.0 + g.norm()));
      auto rng = std::mt19937_64{seed * 97 + 5};
      const auto v = gaussian_vector(d, rng);
      CHECK((td.apply_s(td.apply_s(v)) - v).norm() <= 1e-9 * v.norm());

      // polar pieces: S = J Delta^{1/2}, J antiunitary involution
      const Eigen::MatrixXcd half = td.delta_power(0.5);
      CHECK((td.s_matrix - td.j_unitary * half.conjugate()).cwiseAbs()
                .maxCoeff() <= 1e-9 * (1.0 + half.cwiseAbs().maxCoeff()));
      CHECK((td.j_unitary * td.j_unitary.conjugate() - identity)
                .cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((td.j_unitary * td.j_unitary.adjoint() - identity)
                .cwiseAbs().maxCoeff() <= 1e-10);

      // J Delta J = Delta^{-1} through the antiunitary representation
      const Eigen::MatrixXcd jdj = td.j_unitary * td.delta.conjugate() *
                                   td.j_unitary.conjugate();
      const Eigen::MatrixXcd inv = td.delta_power(-1.0);
      CHECK((jdj - inv).cwiseAbs().maxCoeff() <=
            1e-9 * (1.0 + inv.cwiseAbs().maxCoeff()));

      // spectrum is positive and closed under inversion
      const int m = static_cast<int>(td.delta_eigenvalues.size());
      for (int i = 0; i < m; ++i) {
        CHECK(td.delta_eigenvalues(i) > 0.0);
        CHECK(td.delta_eigenvalues(i) * td.delta_eigenvalues(m - 1 - i) ==
              doctest::Approx(1.0).epsilon(1e-8));
      }

      CHECK(modular_flow_check(h, {0.1, 1.0, 10.0}) <= 1e-9);
      CHECK(modular_conjugation_defect(h) <= 1e-9);
    }
  }
}

// ---------------------------------------------------------------------------
// sampling and twisted duality

TEST_CASE("sampled vectors are unit vectors inside the subspace") {
  const auto h = well_conditioned_standard_subspace(3, 7);
  for (const std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
    const auto v = sample_unit_vector(h, seed);
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
    CHECK(h.contains(v));
  }
}

TEST_CASE("generators of a subspace and its complement commute on the band") {
  const TruncatedFockSpace tiny(1, 3);
  const auto real_line = RealSubspace::from_generators(1, {single(1.0)});
  CHECK(twisted_duality_generators(tiny, real_line, 10, 5) <= 1e-12);

  const TruncatedFockSpace space(2, 4);
  const auto h = well_conditioned_standard_subspace(2, 11);
  CHECK(twisted_duality_generators(space, h, 50, 17) <= 1e-12);
}

TEST_CASE("pairs outside the complement see the symplectic form") {
  const TruncatedFockSpace space(2, 4);
  const auto h = well_conditioned_standard_subspace(2, 19);
  auto rng = std::mt19937_64{23};
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = sample_unit_vector(h, trial);
    const auto b = gaussian_vector(2, rng);
    const double expected = 2.0 * std::abs(a.dot(b).imag());
    CHECK(std::abs(field_commutator_band_norm(space, a, b) - expected) <=
          1e-10 * (1.0 + expected));
  }
}
