#pragma once

// Machine-readable fit report (schema documented in README.md).

#include <string>

#include "json.hpp"
#include "minimax/fit.hpp"

namespace minimax {

struct FitReportOptions {
  bool certify = false;  // dual certificate, structural checks, alternation analysis
  bool verify = false;   // brute-force oracle comparison
};

struct FitReport {
  nlohmann::json json;
  bool oracle_disagrees = false;
};

FitReport build_fit_report(const ProblemInstance& instance, const FitResult& fit, const FitReportOptions& options);

std::string render_json(const nlohmann::json& report);
std::string render_text(const nlohmann::json& report);

}  // namespace minimax
