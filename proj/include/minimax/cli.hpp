#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace minimax::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,
  kValidationError = 2,
  kSolverFailure = 3,
  kVerifyDisagreement = 4,
};

struct FitCommand {
  std::string data_path;
  std::string basis;
  std::optional<std::string> weights;
  std::optional<std::size_t> dim;
  bool verify = false;
  bool certify = false;
  std::optional<std::string> emit_curve;
  std::size_t grid = 100;
  std::string format = "json";
  std::optional<std::string> out;
  bool timing = false;
};

struct SelftestCommand {
  std::uint64_t seed = 42;
  long long instances = 100;
};

/// Errors go to `err` as a single line "E<code>: <message>".
int run_fit(const FitCommand& cmd, std::ostream& out, std::ostream& err);
int run_selftest(const SelftestCommand& cmd, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minimax::cli
