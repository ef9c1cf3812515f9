#include "minimax/report.hpp"

#include <cstdio>
#include <sstream>

#include "minimax/certificates.hpp"
#include "minimax/equioscillation.hpp"
#include "minimax/error.hpp"
#include "minimax/oracle.hpp"

namespace minimax {

namespace {

nlohmann::json certificate_json(const ProblemInstance& instance, const FitResult& fit) {
  nlohmann::json j;
  try {
    const DualCertificate cert = extract_certificate(fit.solution, instance);
    const CertificateReport rep = verify_identities(cert, fit, instance);
    j["odd_sum"] = cert.odd_sum;
    j["even_sum"] = cert.even_sum;
    j["dual_objective"] = cert.dual_objective;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < cert.beta.size(); ++r) {
      if (cert.beta[r] <= kMultiplierThreshold) continue;
      rows.push_back({{"row", r}, {"point", r / 2}, {"side", r % 2 == 0 ? "overshoot" : "undershoot"},
                      {"beta", cert.beta[r]}});
    }
    j["multipliers"] = std::move(rows);
    j["strong_duality_gap"] = rep.strong_duality_gap;
    j["identity_a_swapped_sign"] = rep.identity_a_swapped_sign;
    j["normalization_residual"] = rep.normalization_residual;
    j["complementarity_violations"] = rep.complementarity_violations;
    j["orthogonality_residuals"] = rep.orthogonality_residuals;
    j["weighted_orthogonality"] = rep.weighted_orthogonality;
    j["identity_g_residual"] = rep.identity_g_residual;
    j["identity_h_residual"] = rep.identity_h_residual;
    j["theorem1_active_count"] = rep.theorem1_active_count;
    j["theorem1_pass"] = rep.theorem1_pass;
    j["theorem2_pass"] = rep.theorem2_pass ? nlohmann::json(*rep.theorem2_pass) : nlohmann::json(nullptr);
    j["duality_pass"] = rep.duality_pass;
    j["normalization_pass"] = rep.normalization_pass;
    j["complementarity_pass"] = rep.complementarity_pass;
    j["orthogonality_pass"] = rep.orthogonality_pass;
    j["identity_g_pass"] = rep.identity_g_pass;
    j["identity_h_pass"] = rep.identity_h_pass;
    j["all_pass"] = rep.all_pass();
  } catch (const DegenerateCase& e) {
    j = {{"skipped", e.what()}};
  }
  return j;
}

nlohmann::json alternation_json(const ProblemInstance& instance, const FitResult& fit) {
  if (instance.p() != 1) return {{"skipped", "alternation analysis needs 1-D points"}};
  try {
    const ReferenceSet ref = alternation_pattern(fit, instance);
    return {{"indices", ref.indices},
            {"signs", ref.signs},
            {"degree", ref.degree},
            {"discrepancy", ref.discrepancy},
            {"equioscillates", ref.equioscillates}};
  } catch (const DegenerateCase& e) {
    return {{"skipped", e.what()}};
  }
}

nlohmann::json oracle_json(const ProblemInstance& instance, const FitResult& fit, bool& disagrees) {
  try {
    const OracleResult o = brute_force_fit(instance);
    const OracleComparison c = compare_with_oracle(fit, o, instance);
    disagrees = !c.agrees;
    return {{"ran", true},
            {"discrepancy", o.discrepancy},
            {"coefficients", o.coefficients},
            {"witness_subset", o.witness_subset},
            {"witness_signs", o.witness_signs},
            {"discrepancy_difference", c.discrepancy_difference},
            {"coefficient_difference", c.coefficient_difference},
            {"coefficients_agree", c.coefficients_agree},
            {"agrees", c.agrees}};
  } catch (const TooLarge& e) {
    return {{"ran", false}, {"reason", e.what()}};
  } catch (const NoCandidate& e) {
    return {{"ran", false}, {"reason", e.what()}};
  }
}

}  // namespace

FitReport build_fit_report(const ProblemInstance& instance, const FitResult& fit, const FitReportOptions& options) {
  FitReport out;
  nlohmann::json& j = out.json;
  j["instance"] = {{"n", instance.n()}, {"m", instance.m()}, {"p", instance.p()}, {"weighted", instance.weighted()}};
  nlohmann::json coefs = nlohmann::json::array();
  for (std::size_t k = 0; k < instance.m(); ++k)
    coefs.push_back({{"label", instance.basis.functions[k].label()}, {"value", fit.coefficients[k]}});
  j["coefficients"] = std::move(coefs);
  j["discrepancy"] = fit.discrepancy;
  j["flags"] = {{"exact_interpolation", fit.exact_interpolation}, {"low_rank", fit.low_rank}, {"rank", fit.rank}};

  nlohmann::json rows = nlohmann::json::array();
  std::size_t next_active = 0;
  for (std::size_t i = 0; i < instance.n(); ++i) {
    const bool active = next_active < fit.active_points.size() && fit.active_points[next_active] == i;
    if (active) ++next_active;
    rows.push_back({{"index", i},
                    {"x", instance.points[i].coordinates},
                    {"y", instance.values[i]},
                    {"residual", fit.residuals[i]},
                    {"active", active}});
  }
  j["residuals"] = std::move(rows);
  j["active_points"] = fit.active_points;
  j["lp"] = {{"status", to_string(fit.solution.status)}, {"iterations", fit.solution.iterations}};

  if (options.certify) {
    j["certificate"] = certificate_json(instance, fit);
    j["alternation"] = alternation_json(instance, fit);
  }
  if (options.verify) j["oracle"] = oracle_json(instance, fit, out.oracle_disagrees);
  return out;
}

std::string render_json(const nlohmann::json& report) { return report.dump(2) + "\n"; }

std::string render_text(const nlohmann::json& r) {
  std::ostringstream os;
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  const auto& inst = r.at("instance");
  os << "instance: n=" << inst.at("n") << " m=" << inst.at("m") << " p=" << inst.at("p")
     << (inst.at("weighted").get<bool>() ? " (weighted)" : "") << "\n";
  os << "discrepancy: " << num(r.at("discrepancy").get<double>()) << "\n";
  os << "coefficients:\n";
  for (const auto& c : r.at("coefficients"))
    os << "  " << c.at("label").get<std::string>() << " = " << num(c.at("value").get<double>()) << "\n";
  const auto& flags = r.at("flags");
  if (flags.at("exact_interpolation").get<bool>()) os << "note: exact interpolation (discrepancy 0)\n";
  if (flags.at("low_rank").get<bool>()) os << "note: design matrix is rank deficient; optimum may not be unique\n";
  os << "residuals:\n";
  for (const auto& row : r.at("residuals"))
    os << "  [" << row.at("index") << "] y=" << num(row.at("y").get<double>())
       << " r=" << num(row.at("residual").get<double>()) << (row.at("active").get<bool>() ? "  *" : "") << "\n";
  if (r.contains("certificate")) {
    const auto& c = r.at("certificate");
    if (c.contains("skipped")) {
      os << "certificate: skipped (" << c.at("skipped").get<std::string>() << ")\n";
    } else {
      os << "certificate: " << (c.at("all_pass").get<bool>() ? "all checks pass" : "CHECK FAILED") << "\n";
      os << "  strong duality gap " << num(c.at("strong_duality_gap").get<double>()) << "\n";
      os << "  multiplier halves " << num(c.at("odd_sum").get<double>()) << " / "
         << num(c.at("even_sum").get<double>()) << "\n";
      os << "  active points " << c.at("theorem1_active_count") << " (theorem 1 "
         << (c.at("theorem1_pass").get<bool>() ? "pass" : "FAIL") << ")\n";
      if (!c.at("theorem2_pass").is_null())
        os << "  overshoot and undershoot present: " << (c.at("theorem2_pass").get<bool>() ? "yes" : "NO") << "\n";
    }
  }
  if (r.contains("alternation")) {
    const auto& a = r.at("alternation");
    if (a.contains("skipped"))
      os << "alternation: skipped (" << a.at("skipped").get<std::string>() << ")\n";
    else
      os << "alternation: " << (a.at("equioscillates").get<bool>() ? "equioscillates" : "does not equioscillate")
         << " over " << a.at("indices").size() << " points\n";
  }
  if (r.contains("oracle")) {
    const auto& o = r.at("oracle");
    if (!o.at("ran").get<bool>())
      os << "oracle: not run (" << o.at("reason").get<std::string>() << ")\n";
    else
      os << "oracle: " << (o.at("agrees").get<bool>() ? "agrees" : "DISAGREES") << ", discrepancy "
         << num(o.at("discrepancy").get<double>()) << "\n";
  }
  if (r.contains("timing_ms")) os << "time: " << num(r.at("timing_ms").get<double>()) << " ms\n";
  return os.str();
}

}  // namespace minimax
