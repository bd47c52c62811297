// JSON debug round trips for operators, vectors, and subspaces.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <stdexcept>

#include "fockforge/fock.hpp"
#include "fockforge/serialize.hpp"
#include "fockforge/standard_subspace.hpp"

using namespace fockforge;

namespace {

Eigen::VectorXcd gaussian_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex{re, im};
  }
  return v;
}

}  // namespace

TEST_CASE("operators survive the debug round trip entrywise") {
  const TruncatedFockSpace space(2, 3);
  auto rng = std::mt19937_64{5};
  const auto h = gaussian_vector(2, rng);
  const FockOperator original = field_s(space, h);

  const FockOperator restored = operator_from_debug_json(to_debug_json(original));
  CHECK(restored.d() == original.d());
  CHECK(restored.N() == original.N());
  const Eigen::MatrixXcd a = band_block(original, space.N(), space.N());
  const Eigen::MatrixXcd b = band_block(restored, space.N(), space.N());
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  // band metadata is not carried by the format
  CHECK(restored.exact_band() < 0);
}

TEST_CASE("vectors survive the debug round trip") {
  const TruncatedFockSpace space(3, 2);
  auto rng = std::mt19937_64{6};
  FockVector v(space);
  for (long long i = 0; i < space.dim(); ++i) {
    const auto g = gaussian_vector(1, rng);
    v.coeffs(i) = g(0);
  }
  const FockVector w = vector_from_debug_json(to_debug_json(v));
  CHECK(w.d == v.d);
  CHECK(w.N == v.N);
  CHECK((w.coeffs - v.coeffs).norm() == 0.0);
}

TEST_CASE("subspaces round trip as generator lists") {
  auto rng = std::mt19937_64{7};
  std::vector<Eigen::VectorXcd> gens;
  for (int i = 0; i < 2; ++i) gens.push_back(gaussian_vector(3, rng));
  const auto h = RealSubspace::from_generators(3, gens);

  const auto restored = subspace_from_debug_json(to_debug_json(h));
  CHECK(restored.ambient_dim() == 3);
  CHECK(restored.real_dim() == h.real_dim());
  CHECK(subspace_defect(h.basis(), restored.basis()) <= 1e-12);
}

TEST_CASE("malformed payloads are rejected loudly") {
  CHECK_THROWS_AS(operator_from_debug_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(vector_from_debug_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(subspace_from_debug_json(""), std::invalid_argument);
  // right shape, wrong coefficient count
  CHECK_THROWS_AS(
      vector_from_debug_json(R"({"d":2,"N":1,"coeffs":[[1.0,0.0]]})"),
      std::invalid_argument);
}
