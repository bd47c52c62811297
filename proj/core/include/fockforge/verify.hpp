// Property suites over all core modules: each suite runs a batch of
// identity checks with per-check tolerances, reports the worst offender,
// and on failure attaches a JSON debug dump of the offending object.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fockforge {

class RealSubspace;

struct VerifyOptions {
  int d = 3;             // one-particle dimension for Fock suites
  int N = 4;             // particle cutoff for Fock suites
  std::uint64_t seed = 42;
  int samples = 5;       // batch size scale for randomized checks
};

struct SuiteResult {
  std::string suite;
  bool passed;
  double max_defect;    // raw defect of the worst check (by defect/tolerance)
  double tolerance;     // tolerance of that check
  std::string detail;   // check count, worst-check label, extra context
  std::string failure_dump_json;  // debug dump of an offender, empty on pass
};

// Suite names in canonical run order.
std::vector<std::string> suite_names();

// Run one suite; throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

// Run every suite in canonical order.
std::vector<SuiteResult> run_all(const VerifyOptions& opts);

// Seeded standard subspace of C^d whose modular frame [B, iB] has condition
// number at most cond_limit; retries with perturbed seeds, throws
// std::runtime_error if no well-conditioned sample is found.
RealSubspace well_conditioned_standard_subspace(int d, std::uint64_t seed,
                                                double cond_limit = 1e4,
                                                int max_attempts = 64);

}  // namespace fockforge
