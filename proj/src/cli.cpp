#include "minimax/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "minimax/csv.hpp"
#include "minimax/error.hpp"
#include "minimax/fit.hpp"
#include "minimax/report.hpp"
#include "minimax/selftest.hpp"

namespace minimax::cli {

namespace {

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int fail(std::ostream& err, int code, const std::string& kind, const std::string& message) {
  err << "E" << code << ": " << one_line(kind.empty() ? message : kind + ": " + message) << "\n";
  return code;
}

std::string kind_of(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "";  // message already starts with ParseError
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const EvaluationError*>(&e)) return "EvaluationError";
  if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
  if (dynamic_cast<const SolverError*>(&e)) return "SolverError";
  if (dynamic_cast<const NumericFailure*>(&e)) return "NumericFailure";
  return "Error";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve(const ProblemInstance& inst, const FitResult& f, std::size_t grid, std::ostream& os) {
  double lo = inst.points[0].coordinates[0], hi = lo;
  for (const auto& p : inst.points) {
    lo = std::min(lo, p.coordinates[0]);
    hi = std::max(hi, p.coordinates[0]);
  }
  os << "x,fitted\n";
  for (std::size_t k = 0; k <= grid; ++k) {
    const double x = k == grid ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid);
    const double pt[1] = {x};
    double v = 0.0;
    for (std::size_t j = 0; j < inst.m(); ++j) v += f.coefficients[j] * inst.basis.functions[j].evaluate(pt);
    os << format_number(x) << "," << format_number(v) << "\n";
  }
}

}  // namespace

int run_fit(const FitCommand& cmd, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  ProblemInstance inst;
  try {
    std::ifstream in(cmd.data_path);
    if (!in) return fail(err, kValidationError, "InvalidInput", "cannot open data file '" + cmd.data_path + "'");
    const CsvTable table = read_csv(in);
    inst = instance_from_csv(table, cmd.basis, {cmd.dim, cmd.weights});
    if (cmd.format != "json" && cmd.format != "text")
      return fail(err, kValidationError, "InvalidInput", "--format must be json or text");
    if (cmd.emit_curve && inst.p() != 1)
      return fail(err, kValidationError, "InvalidInput", "--emit-curve needs 1-D data");
    if (cmd.emit_curve && cmd.grid == 0) return fail(err, kValidationError, "InvalidInput", "--grid must be >= 1");
  } catch (const Error& e) {
    return fail(err, kValidationError, kind_of(e), e.what());
  }

  FitResult result;
  try {
    result = fit(inst);
  } catch (const EvaluationError& e) {
    return fail(err, kValidationError, kind_of(e), e.what());
  } catch (const Error& e) {
    return fail(err, kSolverFailure, kind_of(e), e.what());
  }

  FitReport report;
  try {
    report = build_fit_report(inst, result, {cmd.certify, cmd.verify});
  } catch (const Error& e) {
    return fail(err, kSolverFailure, kind_of(e), e.what());
  }
  if (cmd.timing) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    report.json["timing_ms"] = ms.count();
  }

  const std::string text = cmd.format == "text" ? render_text(report.json) : render_json(report.json);
  if (cmd.out) {
    std::ofstream f(*cmd.out, std::ios::binary);
    if (!f) return fail(err, kValidationError, "InvalidInput", "cannot write '" + *cmd.out + "'");
    f << text;
  } else {
    out << text;
  }
  if (cmd.emit_curve) {
    std::ofstream f(*cmd.emit_curve, std::ios::binary);
    if (!f) return fail(err, kValidationError, "InvalidInput", "cannot write '" + *cmd.emit_curve + "'");
    write_curve(inst, result, cmd.grid, f);
  }
  if (report.oracle_disagrees)
    return fail(err, kVerifyDisagreement, "VerifyMismatch", "LP fit and brute-force oracle disagree");
  return kOk;
}

int run_selftest(const SelftestCommand& cmd, std::ostream& out, std::ostream& err) {
  if (cmd.instances <= 0) return fail(err, kValidationError, "InvalidInput", "--instances must be positive");
  const auto results = run_property_battery(cmd.seed, static_cast<std::size_t>(cmd.instances));
  bool ok = true;
  for (const auto& r : results) {
    out << (r.ok() ? "PASS " : "FAIL ") << r.name << " " << r.passed << "/" << r.checked << "\n";
    if (!r.ok()) {
      ok = false;
      out << "  reason: " << r.failure_detail << "\n";
      out << "  instance: " << r.first_failure->dump() << "\n";
    }
  }
  out << (ok ? "selftest passed" : "selftest FAILED") << " (seed " << cmd.seed << ", " << cmd.instances
      << " instances per property)\n";
  if (!ok) return fail(err, kPropertyFailure, "PropertyFailure", "one or more properties failed");
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Best uniform (minimax) approximation of finite data sets by linear programming", "minimax"};
  app.require_subcommand(1);

  FitCommand fitc;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a basis to CSV data and report the minimax solution");
  fit_cmd->add_option("--data", fitc.data_path, "CSV file with header (x or x1..xp, y, optional weights)")
      ->required();
  fit_cmd->add_option("--basis", fitc.basis, "Comma-separated basis functions, e.g. \"1, x, x^2\"")->required();
  fit_cmd->add_option("--weights", fitc.weights, "Name of the weight column");
  fit_cmd->add_option("--dim", fitc.dim, "Point dimension p (default: inferred from columns)");
  fit_cmd->add_flag("--verify", fitc.verify, "Compare against the brute-force oracle (n <= 15, m <= 4)");
  fit_cmd->add_flag("--certify", fitc.certify, "Extract and check the dual certificate and alternation");
  fit_cmd->add_option("--emit-curve", fitc.emit_curve, "Write x,fitted samples to this CSV (1-D only)");
  fit_cmd->add_option("--grid", fitc.grid, "Number of curve intervals (k + 1 samples)");
  fit_cmd->add_option("--format", fitc.format, "Report format: json or text");
  fit_cmd->add_option("--out", fitc.out, "Write the report here instead of stdout");
  fit_cmd->add_flag("--timing", fitc.timing, "Include wall-clock timing in the report");

  SelftestCommand st;
  auto* st_cmd = app.add_subcommand("selftest", "Run the random-instance property battery");
  st_cmd->add_option("--seed", st.seed, "RNG seed");
  st_cmd->add_option("--instances", st.instances, "Instances per property");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kValidationError, "UsageError", e.what());
  }
  if (*fit_cmd) return run_fit(fitc, out, err);
  return run_selftest(st, out, err);
}

}  // namespace minimax::cli
