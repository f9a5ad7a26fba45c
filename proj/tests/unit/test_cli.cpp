#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rsl/config.hpp"
#include "rsl/errors.hpp"
#include "rsl/expr.hpp"
#include "rsl/harness.hpp"
#include "support.hpp"

using namespace rsl;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("rsl_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

const char* kSymmetric = R"(
[problem]
p1 = 1
p2 = 1
a1 = 0
a2 = 1
d = 0
gamma1 = 1
gamma2 = 1
delta1 = 1
delta2 = 1
q_left = "0"
q_right = "0"
delta_left = "0"
delta_right = "0"
)";

}  // namespace

TEST_CASE("expression examples") {
  CHECK(parse_expr("sin(x)+0.5")(0.0) == 0.5);
  CHECK(parse_expr("2*pi")(0.0) == doctest::Approx(6.28319).epsilon(1e-6));
  CHECK(parse_expr("1 - 2 - 3")(0.0) == -4.0);
  CHECK(parse_expr("8 / 4 / 2")(0.0) == 1.0);
  CHECK(parse_expr("2^3^2")(0.0) == 64.0);
  CHECK(parse_expr("-x^2")(3.0) == -9.0);
  CHECK(parse_expr("2*-x")(3.0) == -6.0);
  CHECK(parse_expr("x^(-1)")(4.0) == 0.25);
  CHECK(parse_expr("max(1, x, 3)")(5.0) == 5.0);
  CHECK(parse_expr("min(1, x)")(0.5) == 0.5);
  CHECK(parse_expr("abs(cos(pi))*exp(0)")(0.0) == 1.0);
  CHECK(parse_expr("1e-3*x")(2.0) == doctest::Approx(2e-3));
  CHECK(parse_expr("0.05*(x - pi/2)")(kPi) == doctest::Approx(0.05 * kInterface));
  CHECK(parse_expr("1 + 2 * 3").to_string() == "(1+(2*3))");
  CHECK(parse_expr(" x ").source() == " x ");
}

TEST_CASE("expression errors carry offsets") {
  try {
    parse_expr("x++1");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 2);
    CHECK_FALSE(e.expected().empty());
  }
  try {
    parse_expr("1 + foo(x)");
    FAIL("no error");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.offset() == 4);
    CHECK(e.name() == "foo");
  }
  CHECK_THROWS_AS(parse_expr(""), SyntaxError);
  CHECK_THROWS_AS(parse_expr("(x"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("x)"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("sin(x, 1)"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("max(x)"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("y"), UnknownIdentifier);
  // Unary minus binds looser than ^, so an exponent cannot start with it.
  CHECK_THROWS_AS(parse_expr("x^-1"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("1/x")(0.0), DomainError);
  CHECK_THROWS_AS(parse_expr("2^x")(0.5), DomainError);
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config(std::string(kSymmetric) + R"(
[experiment]
kind = trace   # comment
n_max = 7
trace_sizes = 3, 6
seed = 9

[integrator]
step_count = 1024
richardson_levels = 2
)");
  CHECK(cfg.kind == ExperimentKind::Trace);
  CHECK(cfg.n_max == 7);
  CHECK(cfg.trace_sizes == std::vector<int>{3, 6});
  CHECK(cfg.seed == 9);
  CHECK(cfg.step_count == 1024);
  CHECK(cfg.spectrum_config().theta.richardson_levels == 2);
  CHECK(cfg.spectrum_config().theta.integrator.step_count == 1024);
  CHECK_NOTHROW(require_valid(cfg.problem_spec()));
}

TEST_CASE("config errors") {
  const std::string base(kSymmetric);
  CHECK_THROWS_AS(parse_config("[problem]\np1 = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "\n[experiment]\nkind = dance\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "\n[experiment]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "p1 = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "\n[nowhere]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "\n[experiment]\nn_max = many\n"), ConfigError);
  try {
    parse_config("[problem]\np1 = 1\np2 = oops\n");
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::string bad = base;
  bad.replace(bad.find("q_left = \"0\""), 12, "q_left = \"x +\"");
  CHECK_THROWS(parse_config(bad));
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("config round trip is byte-stable") {
  for (const char* name :
       {"symmetric.cfg", "robin.cfg", "smooth_gated.cfg", "classical.cfg", "ungated.cfg"}) {
    const auto cfg = load_config(fs::path(RSL_FIXTURE_DIR) / name);
    const std::string text = serialize_config(cfg);
    const auto again = parse_config(text);
    CHECK(again == cfg);
    CHECK(serialize_config(again) == text);
  }
  ExperimentConfig odd;
  odd.p1 = 0.1;
  odd.d = 1.0 / 3.0;
  odd.q_left = "x^2 - 1";
  CHECK(parse_config(serialize_config(odd)) == odd);
}

TEST_CASE("convergence slope") {
  CHECK(convergence_slope({{10, 1e-3}, {20, 1.25e-4}, {40, 1.5625e-5}}) ==
        doctest::Approx(-3.0).epsilon(1e-12));
  CHECK_THROWS_AS(convergence_slope({{10, 1e-2}, {20, 5e-3}}), DegenerateInput);
  CHECK(convergence_slope({{10, 2.0}, {20, 2.0}, {40, 2.0}}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(convergence_slope({{10, 1.0}, {20, 0.0}, {40, 1.0}}), DegenerateInput);
  CHECK_THROWS_AS(convergence_slope({{10, 1.0}, {10, 2.0}, {10, 3.0}}), DegenerateInput);
}

TEST_CASE("csv numbers use 17 significant digits") {
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(3.0) == "3");
  CHECK(std::stod(csv_number(kPi)) == kPi);
}

TEST_CASE("spectrum run on the symmetric config") {
  auto cfg = parse_config(std::string(kSymmetric) + "\n[experiment]\nkind = spectrum\nn_max = 5\n");
  cfg.output = scratch_dir("spectrum").string();
  const auto run = run_experiment(cfg);
  CHECK(run.all_passed);
  const std::string csv = slurp(fs::path(cfg.output) / "spectrum.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,lambda0,lambda,theorem1,residual,error,n3_error,bracket_lo,bracket_hi");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 9);
    CHECK(std::abs(std::stod(cells[5])) <= 1e-9);
  }
  CHECK(rows == 5);
  const auto summary = nlohmann::json::parse(slurp(fs::path(cfg.output) / "summary.json"));
  CHECK(summary["experiment"] == "spectrum");
  CHECK(summary["seed"] == 42);
  CHECK(summary["results"]["spectrum"]["n_max"] == 5);
}

TEST_CASE("trace run on the symmetric config") {
  auto cfg = parse_config(std::string(kSymmetric) +
                          "\n[experiment]\nkind = trace\ntrace_sizes = 5, 10, 20\n");
  cfg.output = scratch_dir("trace").string();
  const auto run = run_experiment(cfg);
  const auto summary = nlohmann::json::parse(run.summary_json);
  const auto& trace = summary["results"]["trace"];
  CHECK(trace["rhs"].get<double>() == 0.0);
  for (const auto& row : trace["partial_sums"]) CHECK(std::abs(row["S"].get<double>()) <= 1e-9);
  CHECK(fs::exists(fs::path(cfg.output) / "trace.csv"));
}

TEST_CASE("nodal run writes one table per n") {
  auto cfg = parse_config(std::string(kSymmetric) + "\n[experiment]\nkind = nodal\nnodal_n = 4, 6\n");
  cfg.output = scratch_dir("nodal").string();
  run_experiment(cfg);
  CHECK(fs::exists(fs::path(cfg.output) / "nodal_4.csv"));
  CHECK(fs::exists(fs::path(cfg.output) / "nodal_6.csv"));
  cfg.nodal_n = {3};
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("runs are deterministic") {
  auto cfg = parse_config(std::string(kSymmetric) +
                          "\n[experiment]\nkind = trace\ntrace_sizes = 4, 8\n");
  const auto dir_a = scratch_dir("det_a"), dir_b = scratch_dir("det_b");
  cfg.output = dir_a.string();
  const auto a = run_experiment(cfg);
  cfg.output = dir_b.string();
  const auto b = run_experiment(cfg);
  CHECK(a.summary_json == b.summary_json);
  CHECK(slurp(dir_a / "trace.csv") == slurp(dir_b / "trace.csv"));
}

TEST_CASE("strict mode refuses ungated instances") {
  auto cfg = load_config(fs::path(RSL_FIXTURE_DIR) / "ungated.cfg");
  cfg.n_max = 3;
  cfg.output = scratch_dir("strict").string();
  CHECK_THROWS_AS(run_experiment(cfg, {.strict = true}), PreconditionViolated);
  CHECK_NOTHROW(run_experiment(cfg));
}
