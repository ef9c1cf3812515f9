#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "minimax/cli.hpp"
#include "minimax/fit.hpp"
#include "minimax/selftest.hpp"
#include "nlohmann/json.hpp"

using namespace minimax;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "minimax");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MINIMAX_TEST_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("minimax_cli_test_" + name); }

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("fit prints a json report") {
  const auto r = run_cli({"fit", "--data", data("x_squared.csv"), "--basis", "1,x"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["discrepancy"].get<double>() == doctest::Approx(0.125));
  CHECK(j["coefficients"][0]["label"] == "1");
  CHECK(j["coefficients"][0]["value"].get<double>() == doctest::Approx(-0.125));
  CHECK(j["coefficients"][1]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["lp"]["status"] == "optimal");
  CHECK_FALSE(j.contains("certificate"));
  CHECK_FALSE(j.contains("timing_ms"));
}

TEST_CASE("report coefficients reproduce the discrepancy") {
  Rng rng(2);
  const auto inst = random_smooth_instance(rng, 40, 3);
  const auto csv = scratch("smooth.csv");
  {
    std::ofstream f(csv);
    f.precision(17);
    f << "x,y\n";
    for (std::size_t i = 0; i < inst.n(); ++i) f << inst.points[i].coordinates[0] << "," << inst.values[i] << "\n";
  }
  const auto r = run_cli({"fit", "--data", csv.string(), "--basis", monomial_spec(3)});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  std::vector<double> a;
  for (const auto& c : j["coefficients"]) a.push_back(c["value"].get<double>());
  CHECK(std::fabs(objective_value(inst, a) - j["discrepancy"].get<double>()) <= 1e-12);
  fs::remove(csv);
}

TEST_CASE("certify and verify sections") {
  const auto r = run_cli({"fit", "--data", data("hat.csv"), "--basis", "1,x", "--certify", "--verify", "--timing"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["certificate"]["all_pass"] == true);
  CHECK(j["alternation"]["equioscillates"] == true);
  CHECK(j["oracle"]["agrees"] == true);
  CHECK(j.contains("timing_ms"));
}

TEST_CASE("text format and output file") {
  const auto out = scratch("report.txt");
  const auto r =
      run_cli({"fit", "--data", data("hat.csv"), "--basis", "1,x", "--format", "text", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(text.find("discrepancy") != std::string::npos);
  fs::remove(out);
}

TEST_CASE("curve samples") {
  const auto curve = scratch("curve.csv");
  const auto r = run_cli(
      {"fit", "--data", data("x_squared.csv"), "--basis", "1,x", "--emit-curve", curve.string(), "--grid", "4"});
  REQUIRE(r.code == 0);
  std::ifstream f(curve);
  std::vector<std::string> lines;
  for (std::string line; std::getline(f, line);) lines.push_back(line);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "x,fitted");
  CHECK(lines[1].rfind("0,", 0) == 0);
  CHECK(lines[5].rfind("1,", 0) == 0);
  fs::remove(curve);
}

TEST_CASE("weights column") {
  const auto csv = scratch("weighted.csv");
  write(csv, "x,y,w\n0,0,2\n1,1,1\n");
  const auto r = run_cli({"fit", "--data", csv.string(), "--basis", "1", "--weights", "w"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["discrepancy"].get<double>() == doctest::Approx(2.0 / 3.0));
  fs::remove(csv);
}

TEST_CASE("validation errors exit 2") {
  auto r = run_cli({"fit", "--data", data("hat.csv"), "--basis", "1,q"});
  CHECK(r.code == cli::kValidationError);
  CHECK(r.err.rfind("E2: ParseError", 0) == 0);

  r = run_cli({"fit", "--data", data("missing.csv"), "--basis", "1"});
  CHECK(r.code == cli::kValidationError);

  r = run_cli({"fit", "--basis", "1"});
  CHECK(r.code == cli::kValidationError);

  const auto csv = scratch("nan.csv");
  write(csv, "x,y\n0,0\n1,nan\n");
  r = run_cli({"fit", "--data", csv.string(), "--basis", "1"});
  CHECK(r.code == cli::kValidationError);
  CHECK(r.err.find("InvalidInput") != std::string::npos);
  fs::remove(csv);

  r = run_cli({"fit", "--data", data("hat.csv"), "--basis", "1,x", "--format", "xml"});
  CHECK(r.code == cli::kValidationError);

  r = run_cli({"selftest", "--instances", "0"});
  CHECK(r.code == cli::kValidationError);
}

TEST_CASE("selftest") {
  const auto r = run_cli({"selftest", "--seed", "5", "--instances", "10"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("selftest passed") != std::string::npos);
}
