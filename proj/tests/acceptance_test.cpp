// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "minimax/certificates.hpp"
#include "minimax/cli.hpp"
#include "minimax/equioscillation.hpp"
#include "minimax/error.hpp"
#include "minimax/fit.hpp"
#include "minimax/oracle.hpp"
#include "minimax/selftest.hpp"
#include "nlohmann/json.hpp"

using namespace minimax;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what;
  }
  bool ok() const { return checked > 0 && failed == 0; }
};

// Collects the identity residuals of every non-degenerate solve in the run.
struct IdentityLog {
  Tally tally;
  double worst_gap = 0.0, worst_norm = 0.0, worst_orth = 0.0, worst_h = 0.0;

  void record(const ProblemInstance& inst, const FitResult& f, const std::string& where) {
    if (f.exact_interpolation || f.low_rank) return;
    const auto cert = extract_certificate(f.solution, inst);
    const auto rep = verify_identities(cert, f, inst);
    const double d = f.discrepancy;
    double orth = 0.0;
    for (double e : rep.orthogonality_residuals) orth = std::max(orth, std::fabs(e));
    worst_gap = std::max(worst_gap, std::fabs(rep.strong_duality_gap) / std::max(1.0, d));
    worst_norm = std::max(worst_norm, std::fabs(rep.normalization_residual));
    worst_orth = std::max(worst_orth, orth);
    worst_h = std::max(worst_h, std::fabs(rep.identity_h_residual));
    tally.expect(std::fabs(rep.strong_duality_gap) <= 1e-8 * std::max(1.0, d), where + ": duality gap");
    tally.expect(std::fabs(rep.normalization_residual) <= 1e-9, where + ": multiplier sum");
    tally.expect(orth <= 1e-8, where + ": orthogonality");
    tally.expect(std::fabs(rep.identity_h_residual) <= 1e-8, where + ": identity (h)");
  }
};

struct Line {
  int id;
  std::string text;
};
std::vector<Line> lines;
int failures = 0;

// Criterion 3 is only known at the end, so lines are printed sorted afterwards.
void report(int id, const char* name, bool ok, const std::string& detail) {
  char head[64];
  std::snprintf(head, sizeof head, "%s  %2d  %-28s ", ok ? "PASS" : "FAIL", id, name);
  lines.push_back({id, head + detail});
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string summary(const Tally& t) {
  std::string s = std::to_string(t.checked - t.failed) + "/" + std::to_string(t.checked);
  if (t.failed) s += "; first failure: " + t.first;
  return s;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  IdentityLog ids;

  // 1 and 2 share 100 instances: n = 50, degree-4 monomials.
  {
    Rng rng(kSeed);
    Tally t1, t2;
    double worst_half = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto inst = random_smooth_instance(rng, 50, 4);
      const auto f = fit(inst);
      const std::string tag = "instance " + std::to_string(k);
      t1.expect(check_theorem1(f, inst.m()),
                tag + " has " + std::to_string(f.active_points.size()) + " active points");

      bool over = false, under = false;
      for (std::size_t i : f.active_points) {
        over = over || f.residuals[i] < 0.0;
        under = under || f.residuals[i] > 0.0;
      }
      const auto cert = extract_certificate(f.solution, inst);
      const double half = std::max(std::fabs(cert.odd_sum - 0.5), std::fabs(cert.even_sum - 0.5));
      worst_half = std::max(worst_half, half);
      t2.expect(over && under && half <= 1e-9, tag + " fails the overshoot/undershoot or half-sum check");
      ids.record(inst, f, "criterion 1 " + tag);
    }
    report(1, "active point count", t1.ok(), summary(t1));
    report(2, "overshoot and undershoot", t2.ok(), summary(t2) + fmt("; worst |half sum - 0.5| %.2e", worst_half));
  }

  // 4: oracle equivalence.
  {
    Rng rng(kSeed + 4);
    Tally t;
    std::size_t non_unique = 0;
    double worst_d = 0.0;
    for (int k = 0; k < 500; ++k) {
      const auto inst = random_small_instance(rng, 12, 3);
      const auto f = fit(inst);
      const auto c = compare_with_oracle(f, brute_force_fit(inst), inst);
      worst_d = std::max(worst_d, c.discrepancy_difference);
      if (!c.coefficients_agree && c.both_optimal) ++non_unique;
      t.expect(c.discrepancy_difference <= 1e-8 && (c.coefficients_agree || c.both_optimal),
               "instance " + std::to_string(k));
      ids.record(inst, f, "criterion 4 instance " + std::to_string(k));
    }
    report(4, "oracle equivalence", t.ok(),
           summary(t) + fmt("; worst |d diff| %.2e", worst_d) + "; non-unique optima " + std::to_string(non_unique));
  }

  // 5: weights versus pre-scaled rows.
  {
    Rng rng(kSeed + 5);
    Tally t;
    double worst_a = 0.0, worst_d = 0.0;
    for (int k = 0; k < 100; ++k) {
      auto inst = random_smooth_instance(rng, 20, 2, 0.1);
      inst.weights = random_weights(rng, inst.n(), 0.1, 10.0);
      const auto pre = prescaled(inst);
      const auto a = fit(inst);
      const auto b = fit(pre);
      const double da = max_abs_diff(a.coefficients, b.coefficients);
      const double dd = std::fabs(a.discrepancy - b.discrepancy);
      worst_a = std::max(worst_a, da);
      worst_d = std::max(worst_d, dd);
      t.expect(da <= 1e-8 && dd <= 1e-9, "instance " + std::to_string(k));
      ids.record(inst, a, "criterion 5 weighted " + std::to_string(k));
      ids.record(pre, b, "criterion 5 prescaled " + std::to_string(k));
    }
    report(5, "weighted rescale", t.ok(), summary(t) + fmt("; worst |da| %.2e, |dd| %.2e", worst_a, worst_d));
  }

  // 6: line through x^2 on a dense grid.
  {
    ProblemInstance inst;
    for (int k = 0; k <= 1000; ++k) {
      const double x = k / 1000.0;
      inst.points.push_back({{x}});
      inst.values.push_back(x * x);
    }
    inst.basis = parse_basis_spec("1, x", 1);
    const auto f = fit(inst);
    const double ea = std::max(std::fabs(f.coefficients[0] + 0.125), std::fabs(f.coefficients[1] - 1.0));
    const double ed = std::fabs(f.discrepancy - 0.125);
    ids.record(inst, f, "criterion 6");
    report(6, "line fit to x^2", ea <= 1e-6 && ed <= 1e-6,
           fmt("a = (%.12g, ", f.coefficients[0]) + fmt("%.12g), ", f.coefficients[1]) +
               fmt("d = %.12g", f.discrepancy));
  }

  // 7: one-sided construction.
  {
    Rng rng(kSeed + 7);
    Tally t;
    for (int k = 0; k < 50; ++k) {
      const auto inst = random_smooth_instance(rng, 30, 1 + k % 3, 0.2);
      const auto f = fit(inst);
      const std::string tag = "instance " + std::to_string(k);
      std::size_t j = inst.n();
      for (std::size_t i : f.active_points)
        if (f.residuals[i] < 0.0) {
          j = i;
          break;
        }
      if (j == inst.n()) {
        t.expect(false, tag + " has no overshoot point");
        continue;
      }
      const auto flipped = one_sided_construction(inst, f, j);
      const auto g = fit(flipped);
      t.expect(std::fabs(g.discrepancy - f.discrepancy) <= 1e-9, tag + ": discrepancy changed");
      t.expect(max_abs_diff(g.coefficients, f.coefficients) <= 1e-8, tag + ": coefficients changed");
      t.expect(!alternation_pattern(g, flipped).equioscillates, tag + ": still alternates");
      ids.record(inst, f, "criterion 7 " + tag);
      ids.record(flipped, g, "criterion 7 flipped " + tag);
    }
    report(7, "one-sided construction", t.ok(), summary(t));
  }

  // 8: perturbation argument.
  {
    Rng rng(kSeed + 8);
    Tally t;
    double worst_rel = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto c = random_perturbation_case(rng, 1 + k % 5);
      const auto step = perturbation_step(c.reference, c.instance, c.j, c.epsilon);
      const double rel = std::fabs(step.new_value_at_next - step.product_formula_value) /
                         std::fabs(step.product_formula_value);
      worst_rel = std::max(worst_rel, rel);
      const auto red = reduction_step(c.reference, c.instance, c.j, c.epsilon);
      const std::string tag = "configuration " + std::to_string(k);
      t.expect(rel <= 1e-8, tag + ": product formula off");
      t.expect(red.max_reference_discrepancy < c.reference.discrepancy, tag + ": not reduced");
    }
    report(8, "perturbation argument", t.ok(), summary(t) + fmt("; worst relative error %.2e", worst_rel));
  }

  // 9: convexity of the objective.
  {
    Rng rng(kSeed + 9);
    std::uniform_real_distribution<double> coef(-3.0, 3.0), unit(0.0, 1.0);
    Tally t;
    double worst = -1e300;
    for (int k = 0; k < 20; ++k) {
      const auto inst = random_smooth_instance(rng, 40, 1 + k % 4);
      const ObjectiveEvaluator e(inst);
      std::vector<double> a(inst.m()), b(inst.m()), mix(inst.m());
      for (int q = 0; q < 1000; ++q) {
        for (auto& v : a) v = coef(rng);
        for (auto& v : b) v = coef(rng);
        const double s = unit(rng);
        for (std::size_t j = 0; j < mix.size(); ++j) mix[j] = s * a[j] + (1 - s) * b[j];
        const double excess = e(mix) - (s * e(a) + (1 - s) * e(b));
        worst = std::max(worst, excess);
        t.expect(excess <= 1e-12, "instance " + std::to_string(k) + " triple " + std::to_string(q));
      }
    }
    report(9, "convexity", t.ok(), summary(t) + fmt("; largest excess %.2e", worst));
  }

  // 10: CLI golden report.
  {
    namespace fs = std::filesystem;
    const fs::path out = fs::temp_directory_path() / "minimax_acceptance_hat.json";
    const std::string data = std::string(MINIMAX_TEST_DATA_DIR) + "/hat.csv";
    std::ostringstream so, se;
    const int code = cli::run({"minimax", "fit", "--data", data, "--basis", "1,x", "--certify", "--verify", "--out",
                               out.string()},
                              so, se);
    auto slurp = [](const fs::path& p) {
      std::ifstream f(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    };
    const std::string produced = slurp(out);
    const std::string golden = slurp(fs::path(MINIMAX_GOLDEN_DIR) / "hat_certify_verify.json");
    fs::remove(out);
    bool ok = code == 0 && !golden.empty() && produced == golden;
    std::string detail = ok ? "byte-identical to golden" : "exit " + std::to_string(code) + ", report differs";
    if (ok) {
      const auto j = nlohmann::json::parse(produced);
      const auto& c = j["certificate"];
      const bool flags = c["all_pass"] == true && c["duality_pass"] == true && c["normalization_pass"] == true &&
                         c["complementarity_pass"] == true && c["orthogonality_pass"] == true &&
                         c["identity_g_pass"] == true && c["identity_h_pass"] == true &&
                         c["theorem1_pass"] == true && c["theorem2_pass"] == true && j["oracle"]["agrees"] == true;
      ok = flags && j["discrepancy"].get<double>() == 0.5;
      detail += ok ? ", d = 0.5, all pass flags true" : ", unexpected discrepancy or flags";
    }
    report(10, "CLI golden report", ok, detail);
  }

  // 3 covers every non-degenerate solve above.
  report(3, "duality identities", ids.tally.ok(),
         summary(ids.tally) + fmt("; worst gap/max(1,d) %.2e, |sum-1| %.2e", ids.worst_gap, ids.worst_norm) +
             fmt(", orth %.2e, (h) %.2e", ids.worst_orth, ids.worst_h));

  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  for (const auto& l : lines) std::printf("%s\n", l.text.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s: %d criteria failed, %.2f s\n", failures ? "FAILED" : "OK", failures, secs);
  return failures ? 1 : 0;
}
