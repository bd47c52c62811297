// End-to-end checks of the command-line tool: output schemas, pinned values,
// determinism, and exit codes.  Drives the built binary through popen.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;
using std::numbers::pi;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FOCKFORGE_CLI_PATH) + " " + args;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
    out.append(buffer, got);
  const int status = ::pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string temp_path(const std::string& tag) {
  return "/tmp/fockforge_cli_" + std::to_string(::getpid()) + "_" + tag;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// partition

TEST_CASE("partition emits the documented CSV header and a finite row") {
  const auto r =
      run_cli("partition --weight 1 --beta 0.2206356 --format csv 2>/dev/null");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "beta,q,status,value,truncated,tail_bound");
  const auto row = fields_of(lines[1]);
  REQUIRE(row.size() == 6);
  CHECK(row[0] == "0.2206356");
  CHECK(row[2] == "finite");
  CHECK(std::abs(std::stod(row[3]) - 1.5) <= 1e-8);
  CHECK(std::abs(std::stod(row[4]) - 1.5) <= 1e-8);
  CHECK(std::stod(row[5]) >= 0.0);
}

TEST_CASE("partition marks divergent rows with empty values") {
  const auto r =
      run_cli("partition --weight 1 --beta 0.1103178 --format csv 2>/dev/null");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  const auto row = fields_of(lines[1]);
  REQUIRE(row.size() == 6);
  CHECK(row[2] == "divergent");
  CHECK(row[3].empty());
  CHECK(row[5].empty());
}

TEST_CASE("a beta range produces one ordered row per grid point") {
  const auto r = run_cli(
      "partition --weight 1 --beta-range 0.12 0.5 10 --format csv 2>/dev/null");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 11);  // header + 10 rows
  double previous = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double beta = std::stod(fields_of(lines[i])[0]);
    CHECK(beta > previous);
    previous = beta;
  }
  CHECK(std::abs(std::stod(fields_of(lines[1])[0]) - 0.12) <= 1e-12);
  CHECK(std::abs(std::stod(fields_of(lines[10])[0]) - 0.5) <= 1e-12);
}

TEST_CASE("partition JSON output carries typed rows") {
  const auto r = run_cli(
      "partition --weight 2 --beta-range 0.05 0.3 6 --format json 2>/dev/null");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("command") == "partition");
  CHECK(j.at("n") == 2);
  REQUIRE(j.at("rows").size() == 6);
  for (const auto& row : j.at("rows")) {
    CHECK(row.at("beta").is_number());
    CHECK(row.at("q").is_number());
    const bool divergent = row.at("status") == "divergent";
    CHECK(row.at("value").is_null() == divergent);
    CHECK(row.at("truncated").is_number());
    if (!divergent) {
      CHECK(row.at("tail_bound").is_number());
      CHECK(std::abs(row.at("value").get<double>() -
                     row.at("truncated").get<double>()) <=
            row.at("tail_bound").get<double>());
    }
  }
}

// ---------------------------------------------------------------------------
// beta-max

TEST_CASE("single maximal temperature is pinned to twelve digits") {
  const auto r = run_cli("beta-max --weight 1 --format csv 2>/dev/null");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n,beta,x_root,residual");
  const auto row = fields_of(lines[1]);
  REQUIRE(row.size() == 4);
  CHECK(row[0] == "1");
  CHECK(std::abs(std::stod(row[1]) - std::log(2.0) / (2 * pi)) <= 1e-10);
  CHECK(std::abs(std::stod(row[2]) - 0.5) <= 1e-10);
  CHECK(std::abs(std::stod(row[3])) <= 1e-13);
}

TEST_CASE("weight ranges are strictly decreasing with a split-note on stderr") {
  const std::string err_path = temp_path("betamax_err.txt");
  const auto r =
      run_cli("beta-max --weights 1..8 --format csv 2>" + err_path);
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 9);
  double previous = 1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = fields_of(lines[i]);
    CHECK(row[0] == std::to_string(i));
    const double beta = std::stod(row[1]);
    CHECK(beta < previous);
    previous = beta;
  }
  const std::string err = slurp(err_path);
  CHECK(err.find("split not implied") != std::string::npos);
  std::remove(err_path.c_str());
}

TEST_CASE("beta-max JSON rows carry the split annotation") {
  const auto r = run_cli("beta-max --weights 2..3 --format json 2>/dev/null");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.at("rows").size() == 2);
  for (const auto& row : j.at("rows")) {
    CHECK(row.at("beta").is_number());
    CHECK(row.at("note").get<std::string>().find("split not implied") !=
          std::string::npos);
  }
}

// ---------------------------------------------------------------------------
// spectrum and multiplicities

TEST_CASE("spectrum lists the rotation eigenvalues") {
  const auto r = run_cli("spectrum --weight 1 --d 3 --format csv 2>/dev/null");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "k,eigenvalue");
  for (int k = 0; k < 3; ++k) {
    const auto row = fields_of(lines[k + 1]);
    CHECK(std::abs(std::stod(row[1]) - 2 * pi * (1 + k)) <= 1e-9);
  }
}

TEST_CASE("multiplicities print exact integers") {
  const auto r =
      run_cli("multiplicities --weight 1 --m-max 12 --format csv 2>/dev/null");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 14);
  CHECK(lines[0] == "m,nu");
  CHECK(fields_of(lines[1])[1] == "1");    // m = 0
  CHECK(fields_of(lines[11])[1] == "512"); // m = 10
  CHECK(fields_of(lines[13])[1] == "2048");
}

// ---------------------------------------------------------------------------
// verify

TEST_CASE("full verification passes and reports every suite") {
  const auto r = run_cli("verify --seed 42 2>/dev/null");
  CHECK(r.code == 0);
  CHECK(r.out.find("12/12 suites passed") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  for (const char* suite : {"mobius", "commutation", "moments", "partition"})
    CHECK(r.out.find(suite) != std::string::npos);
}

TEST_CASE("single-suite selection runs only that suite") {
  const auto r = run_cli("verify --suite flip --seed 7 2>/dev/null");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  CHECK(lines.size() == 2);  // one suite line plus the summary
  CHECK(lines[0].find("[PASS]") != std::string::npos);
  CHECK(lines[0].find("flip") != std::string::npos);
  CHECK(r.out.find("1/1 suites passed") != std::string::npos);
}

// ---------------------------------------------------------------------------
// determinism, output files, exit codes

TEST_CASE("identical invocations produce identical bytes") {
  const std::string args =
      "partition --weight 3 --beta-range 0.07 0.4 25 --format json 2>/dev/null";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("results can be written to a file instead of standard output") {
  const std::string out_path = temp_path("partition.csv");
  const auto r = run_cli("partition --weight 1 --beta 0.3 --format csv --out " +
                         out_path + " 2>/dev/null");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const std::string written = slurp(out_path);
  CHECK(written.find("beta,q,status,value,truncated,tail_bound") !=
        std::string::npos);
  std::remove(out_path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("partition --weight 1 2>/dev/null").code == 2);
  CHECK(run_cli("partition --weight 1 --beta -0.2 2>/dev/null").code == 2);
  CHECK(run_cli("partition --weight 1 --beta 0.2 --beta-range 0.1 0.3 4 "
                "2>/dev/null").code == 2);
  CHECK(run_cli("partition --weight 1 --beta-range 0.5 0.1 4 2>/dev/null")
            .code == 2);
  CHECK(run_cli("partition --weight 0 --beta 0.2 2>/dev/null").code == 2);
  CHECK(run_cli("beta-max --weights 8..1 2>/dev/null").code == 2);
  CHECK(run_cli("verify --suite no-such-suite 2>/dev/null").code == 2);
  CHECK(run_cli("bogus-subcommand 2>/dev/null").code == 2);
  CHECK(run_cli("2>/dev/null").code == 2);  // a subcommand is required
}
