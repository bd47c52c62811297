// Command-line front end: spectra, multiplicity tables, partition sweeps,
// maximal temperatures, and the verification suites.  CSV and JSON output
// share the same fixed number formatting so identical configs produce
// byte-identical bytes.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockforge/fock.hpp"
#include "fockforge/oneparticle.hpp"
#include "fockforge/thermo.hpp"
#include "fockforge/verify.hpp"

namespace {

using namespace fockforge;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

// 12 significant digits for values, scientific notation for q-like and
// residual-like columns.
std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_e(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return kExitUsage;
  }
  f << text;
  return kExitOk;
}

std::string split_note(int n, double beta_n) {
  std::ostringstream os;
  os << "trace-class for all beta>0: NO (beta_" << n << " = " << fmt_g(beta_n)
     << "); split not implied";
  return os.str();
}

// ------------------------------------------------------------- partition --

struct PartitionConfig {
  int n = 1;
  double beta = 0.0;
  bool has_beta = false;
  std::vector<double> range;  // start, stop, steps
  int m_max = 60;
  std::string format = "csv";
  std::string out;
};

int run_partition(const PartitionConfig& cfg) {
  if (cfg.n < 1) {
    std::cerr << "weight must be >= 1\n";
    return kExitUsage;
  }
  if (cfg.m_max < 0) {
    std::cerr << "m-max must be >= 0\n";
    return kExitUsage;
  }
  std::vector<double> betas;
  if (cfg.has_beta == !cfg.range.empty()) {
    std::cerr << "pass exactly one of --beta and --beta-range\n";
    return kExitUsage;
  }
  if (cfg.has_beta) {
    betas.push_back(cfg.beta);
  } else {
    const double start = cfg.range[0], stop = cfg.range[1];
    const double steps_raw = cfg.range[2];
    if (steps_raw != std::floor(steps_raw) || steps_raw < 2.0) {
      std::cerr << "beta-range needs an integer step count >= 2\n";
      return kExitUsage;
    }
    if (!(start < stop)) {
      std::cerr << "beta-range needs start < stop\n";
      return kExitUsage;
    }
    const int steps = static_cast<int>(steps_raw);
    for (int i = 0; i < steps; ++i)
      betas.push_back(start + (stop - start) * i / (steps - 1));
  }
  for (double b : betas)
    if (!(b > 0.0)) {
      std::cerr << "beta must be > 0\n";
      return kExitUsage;
    }

  std::ostringstream os;
  const bool json = cfg.format == "json";
  if (json) {
    os << "{\"command\":\"partition\",\"n\":" << cfg.n
       << ",\"m_max\":" << cfg.m_max << ",\"rows\":[";
  } else {
    os << "beta,q,status,value,truncated,tail_bound\n";
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    const PartitionResult closed = partition_closed(cfg.n, b);
    const TruncatedPartition trunc = partition_truncated(cfg.n, b, cfg.m_max);
    const char* status = closed.finite() ? "finite" : "divergent";
    if (json) {
      if (i) os << ",";
      os << "{\"beta\":" << fmt_g(b) << ",\"q\":" << fmt_e(closed.q)
         << ",\"status\":\"" << status << "\",\"value\":";
      if (closed.finite())
        os << fmt_g(*closed.value);
      else
        os << "null";
      os << ",\"truncated\":" << fmt_g(trunc.value) << ",\"tail_bound\":";
      if (trunc.has_bound)
        os << fmt_e(trunc.tail_bound);
      else
        os << "null";
      os << "}";
    } else {
      os << fmt_g(b) << "," << fmt_e(closed.q) << "," << status << ",";
      if (closed.finite()) os << fmt_g(*closed.value);
      os << "," << fmt_g(trunc.value) << ",";
      if (trunc.has_bound) os << fmt_e(trunc.tail_bound);
      os << "\n";
    }
  }
  if (json) os << "]}\n";
  return emit(os.str(), cfg.out);
}

// -------------------------------------------------------------- beta-max --

struct BetaMaxConfig {
  int n = 1;
  std::string weights;  // "A..B" range, optional
  std::string format = "csv";
  std::string out;
};

int run_beta_max(const BetaMaxConfig& cfg) {
  int lo = cfg.n, hi = cfg.n;
  if (!cfg.weights.empty()) {
    const std::size_t dots = cfg.weights.find("..");
    bool ok = dots != std::string::npos && dots > 0 &&
              dots + 2 < cfg.weights.size();
    if (ok) {
      try {
        std::size_t used_lo = 0, used_hi = 0;
        lo = std::stoi(cfg.weights.substr(0, dots), &used_lo);
        const std::string his = cfg.weights.substr(dots + 2);
        hi = std::stoi(his, &used_hi);
        ok = used_lo == dots && used_hi == his.size();
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok || lo > hi) {
      std::cerr << "weights must be a range A..B with A <= B\n";
      return kExitUsage;
    }
  }
  if (lo < 1) {
    std::cerr << "weight must be >= 1\n";
    return kExitUsage;
  }

  std::ostringstream os;
  const bool json = cfg.format == "json";
  if (json)
    os << "{\"command\":\"beta-max\",\"rows\":[";
  else
    os << "n,beta,x_root,residual\n";
  for (int n = lo; n <= hi; ++n) {
    const BetaMaxResult r = beta_max_solve(n);
    std::cerr << split_note(n, r.beta) << "\n";
    if (json) {
      if (n > lo) os << ",";
      os << "{\"n\":" << n << ",\"beta\":" << fmt_g(r.beta)
         << ",\"x_root\":" << fmt_g(r.x_root)
         << ",\"residual\":" << fmt_e(r.residual) << ",\"note\":\""
         << split_note(n, r.beta) << "\"}";
    } else {
      os << n << "," << fmt_g(r.beta) << "," << fmt_g(r.x_root) << ","
         << fmt_e(r.residual) << "\n";
    }
  }
  if (json) os << "]}\n";
  return emit(os.str(), cfg.out);
}

// -------------------------------------------------------------- spectrum --

struct SpectrumConfig {
  int n = 1;
  int d = 8;
  std::string format = "csv";
  std::string out;
};

int run_spectrum(const SpectrumConfig& cfg) {
  if (cfg.n < 1 || cfg.d < 1) {
    std::cerr << "spectrum needs weight >= 1 and d >= 1\n";
    return kExitUsage;
  }
  const std::vector<double> spec =
      rotation_spectrum(LowestWeightIrrep(cfg.n, cfg.d));
  std::ostringstream os;
  const bool json = cfg.format == "json";
  if (json)
    os << "{\"command\":\"spectrum\",\"n\":" << cfg.n << ",\"d\":" << cfg.d
       << ",\"rows\":[";
  else
    os << "k,eigenvalue\n";
  for (int k = 0; k < cfg.d; ++k) {
    if (json) {
      if (k) os << ",";
      os << "{\"k\":" << k
         << ",\"eigenvalue\":" << fmt_g(spec[static_cast<std::size_t>(k)])
         << "}";
    } else {
      os << k << "," << fmt_g(spec[static_cast<std::size_t>(k)]) << "\n";
    }
  }
  if (json) os << "]}\n";
  return emit(os.str(), cfg.out);
}

// -------------------------------------------------------- multiplicities --

struct MultiplicitiesConfig {
  int n = 1;
  int m_max = 20;
  std::string format = "csv";
  std::string out;
};

int run_multiplicities(const MultiplicitiesConfig& cfg) {
  if (cfg.n < 1 || cfg.m_max < 0) {
    std::cerr << "multiplicities need weight >= 1 and m-max >= 0\n";
    return kExitUsage;
  }
  const MultiplicityTable t = multiplicities(cfg.n, cfg.m_max);
  std::ostringstream os;
  const bool json = cfg.format == "json";
  if (json)
    os << "{\"command\":\"multiplicities\",\"n\":" << cfg.n
       << ",\"m_max\":" << cfg.m_max << ",\"rows\":[";
  else
    os << "m,nu\n";
  for (int m = 0; m <= cfg.m_max; ++m) {
    const std::string nu = t.nu[static_cast<std::size_t>(m)].str();
    if (json) {
      if (m) os << ",";
      os << "{\"m\":" << m << ",\"nu\":\"" << nu << "\"}";
    } else {
      os << m << "," << nu << "\n";
    }
  }
  if (json) os << "]}\n";
  return emit(os.str(), cfg.out);
}

// ---------------------------------------------------------------- verify --

struct VerifyConfig {
  std::string suite;
  VerifyOptions opts;
  std::string out;
};

int run_verify(const VerifyConfig& cfg) {
  std::vector<SuiteResult> results;
  if (cfg.suite.empty())
    results = run_all(cfg.opts);
  else
    results.push_back(run_suite(cfg.suite, cfg.opts));

  std::ostringstream os;
  int failures = 0;
  for (const SuiteResult& r : results) {
    os << (r.passed ? "[PASS] " : "[FAIL] ");
    os << r.suite;
    for (std::size_t pad = r.suite.size(); pad < 12; ++pad) os << ' ';
    os << " max defect " << fmt_e(r.max_defect) << " (tol "
       << fmt_e(r.tolerance) << "); " << r.detail << "\n";
    if (!r.passed) {
      ++failures;
      if (!r.failure_dump_json.empty()) {
        const std::string dump_path = "verify_" + r.suite + "_dump.json";
        std::ofstream f(dump_path, std::ios::binary);
        if (f) {
          f << r.failure_dump_json << "\n";
          os << "  dump: " << dump_path << "\n";
        }
      }
    }
  }
  os << results.size() - failures << "/" << results.size()
     << " suites passed (seed " << cfg.opts.seed << ", d " << cfg.opts.d
     << ", N " << cfg.opts.N << ")\n";
  const int rc = emit(os.str(), cfg.out);
  if (rc != kExitOk) return rc;
  return failures == 0 ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated free-probability conformal nets"};
  app.require_subcommand(1);

  PartitionConfig pc;
  CLI::App* partition =
      app.add_subcommand("partition", "partition function sweep");
  partition->add_option("--weight,-n", pc.n, "lowest weight n");
  CLI::Option* beta_opt =
      partition->add_option("--beta", pc.beta, "inverse temperature");
  partition->add_option("--beta-range", pc.range, "START STOP STEPS")
      ->expected(3);
  partition->add_option("--m-max", pc.m_max, "energy cutoff for partial sums");
  partition->add_option("--format", pc.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  partition->add_option("--out", pc.out, "output path (default stdout)");

  BetaMaxConfig bc;
  CLI::App* beta_max_cmd =
      app.add_subcommand("beta-max", "maximal inverse temperatures beta_n");
  beta_max_cmd->add_option("--weight,-n", bc.n, "lowest weight n");
  beta_max_cmd->add_option("--weights", bc.weights, "weight range A..B");
  beta_max_cmd->add_option("--format", bc.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  beta_max_cmd->add_option("--out", bc.out, "output path (default stdout)");

  SpectrumConfig sc;
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "conformal Hamiltonian spectrum");
  spectrum->add_option("--weight,-n", sc.n, "lowest weight n");
  spectrum->add_option("--d", sc.d, "number of levels");
  spectrum->add_option("--format", sc.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  spectrum->add_option("--out", sc.out, "output path (default stdout)");

  MultiplicitiesConfig mc;
  CLI::App* mult =
      app.add_subcommand("multiplicities", "eigenvalue multiplicity table");
  mult->add_option("--weight,-n", mc.n, "lowest weight n");
  mult->add_option("--m-max", mc.m_max, "largest energy level");
  mult->add_option("--format", mc.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  mult->add_option("--out", mc.out, "output path (default stdout)");

  VerifyConfig vc;
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", vc.suite, "run a single suite by name");
  verify->add_option("--d", vc.opts.d, "one-particle dimension");
  verify->add_option("--N", vc.opts.N, "particle number cutoff");
  verify->add_option("--seed", vc.opts.seed, "random seed");
  verify->add_option("--out", vc.out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  pc.has_beta = beta_opt->count() > 0;
  try {
    if (partition->parsed()) return run_partition(pc);
    if (beta_max_cmd->parsed()) return run_beta_max(bc);
    if (spectrum->parsed()) return run_spectrum(sc);
    if (mult->parsed()) return run_multiplicities(mc);
    if (verify->parsed()) return run_verify(vc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "no subcommand\n";
  return kExitUsage;
}
