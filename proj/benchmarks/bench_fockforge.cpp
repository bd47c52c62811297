// Microbenchmarks for the hot paths: field application, commutator defects,
// second quantization, multiplicity tables, root solving, and Tomita data.
#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "fockforge/fock.hpp"
#include "fockforge/oneparticle.hpp"
#include "fockforge/standard_subspace.hpp"
#include "fockforge/thermo.hpp"
#include "fockforge/verify.hpp"

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

static void BM_field_apply(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const TruncatedFockSpace space(d, 5);
  std::mt19937_64 rng{1};
  const FockOperator s = field_s(space, gaussian_vector(d, rng));
  FockVector v(space);
  for (long long i = 0; i < space.dim(); ++i)
    v.coeffs(i) = Complex{1.0 / (1.0 + static_cast<double>(i)), 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.apply(v).coeffs.sum());
  }
  state.SetComplexityN(space.dim());
}
BENCHMARK(BM_field_apply)->Arg(2)->Arg(4)->Arg(8)->Complexity();

static void BM_field_build(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const TruncatedFockSpace space(d, 5);
  std::mt19937_64 rng{2};
  const auto h = gaussian_vector(d, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(field_s(space, h).exact_band());
  }
}
BENCHMARK(BM_field_build)->Arg(2)->Arg(4)->Arg(8);

static void BM_commutator_defect(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const TruncatedFockSpace space(d, 4);
  std::mt19937_64 rng{3};
  const auto h = gaussian_vector(d, rng);
  const auto k = gaussian_vector(d, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(commutator_defect(space, h, k));
  }
}
BENCHMARK(BM_commutator_defect)->Arg(2)->Arg(3)->Arg(4);

static void BM_second_quantize_diagonal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const TruncatedFockSpace space(d, 5);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) u(i, i) = std::exp(-0.3 * (1.0 + i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(second_quantize(space, u).trace());
  }
}
BENCHMARK(BM_second_quantize_diagonal)->Arg(2)->Arg(4)->Arg(8);

static void BM_second_quantize_generic(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const TruncatedFockSpace space(d, 5);
  std::mt19937_64 rng{4};
  Eigen::MatrixXcd u(d, d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) u(i, j) = Complex{gauss(rng), gauss(rng)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(second_quantize(space, u).trace());
  }
}
BENCHMARK(BM_second_quantize_generic)->Arg(2)->Arg(4);

static void BM_multiplicities(benchmark::State& state) {
  const int m_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiplicities(1, m_max).nu.back());
  }
  state.SetComplexityN(m_max);
}
BENCHMARK(BM_multiplicities)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

static void BM_beta_max(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_max(n));
  }
}
BENCHMARK(BM_beta_max)->Arg(1)->Arg(10)->Arg(50);

static void BM_tomita(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto h = well_conditioned_standard_subspace(d, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tomita(h).conditioning);
  }
}
BENCHMARK(BM_tomita)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
