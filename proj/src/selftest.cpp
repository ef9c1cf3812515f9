#include "minimax/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "minimax/certificates.hpp"
#include "minimax/error.hpp"
#include "minimax/oracle.hpp"

namespace minimax {

std::string monomial_spec(std::size_t degree) {
  std::string s = "1";
  if (degree >= 1) s += ", x";
  for (std::size_t k = 2; k <= degree; ++k) s += ", x^" + std::to_string(k);
  return s;
}

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

ProblemInstance one_d(std::vector<double> xs, std::vector<double> ys, std::string_view spec) {
  ProblemInstance inst;
  inst.basis = parse_basis_spec(spec, 1);
  for (double x : xs) inst.points.push_back({{x}});
  inst.values = std::move(ys);
  return inst;
}

}  // namespace

ProblemInstance random_smooth_instance(Rng& rng, std::size_t n, std::size_t degree, double noise) {
  std::vector<double> xs(n), ys(n);
  for (auto& x : xs) x = uniform(rng, -1.0, 1.0);
  std::sort(xs.begin(), xs.end());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) ys[i] = std::sin(3.0 * xs[i]) + 0.5 * std::exp(xs[i]) + noise * gauss(rng);
  return one_d(std::move(xs), std::move(ys), monomial_spec(degree));
}

ProblemInstance random_small_instance(Rng& rng, std::size_t max_n, std::size_t max_m) {
  const bool two_d = max_m >= 3 && uniform_int(rng, 0, 3) == 0;
  const std::size_t m = two_d ? 3 : uniform_int(rng, 1, max_m);
  const std::size_t n = uniform_int(rng, std::min(m + 2, max_n), max_n);
  ProblemInstance inst;
  inst.basis = two_d ? parse_basis_spec("1, x, y", 2) : parse_basis_spec(monomial_spec(m - 1), 1);
  for (std::size_t i = 0; i < n; ++i) {
    EvaluationPoint pt;
    pt.coordinates.push_back(uniform(rng, -1.0, 1.0));
    if (two_d) pt.coordinates.push_back(uniform(rng, -1.0, 1.0));
    inst.points.push_back(std::move(pt));
    inst.values.push_back(uniform(rng, -1.0, 1.0));
  }
  return inst;
}

std::vector<double> random_weights(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> w(n);
  for (auto& x : w) x = uniform(rng, lo, hi);
  return w;
}

ProblemInstance prescaled(const ProblemInstance& weighted) {
  ProblemInstance out = weighted;
  out.weights.reset();
  out.row_scale.assign(weighted.n(), 1.0);
  for (std::size_t i = 0; i < weighted.n(); ++i) {
    const double w = weighted.weight(i);
    out.row_scale[i] = w * weighted.scale(i);
    out.values[i] = w * weighted.values[i];
  }
  return out;
}

PerturbationCase random_perturbation_case(Rng& rng, std::size_t degree) {
  const std::size_t count = degree + 2;
  std::vector<double> z(count);
  for (;;) {
    for (auto& v : z) v = uniform(rng, 0.0, 1.0);
    std::sort(z.begin(), z.end());
    bool spaced = true;
    for (std::size_t i = 1; i < count; ++i) spaced = spaced && z[i] - z[i - 1] >= 0.05;
    if (spaced) break;
  }
  std::vector<double> coef(degree + 1);
  for (auto& c : coef) c = uniform(rng, -1.0, 1.0);
  const double d = uniform(rng, 0.1, 1.0);
  const std::size_t j = uniform_int(rng, 0, degree);

  std::vector<int> signs(count);
  signs[0] = uniform_int(rng, 0, 1) ? 1 : -1;
  for (std::size_t i = 1; i < count; ++i) signs[i] = i == j + 1 ? signs[i - 1] : -signs[i - 1];

  std::vector<double> ys(count);
  for (std::size_t i = 0; i < count; ++i) {
    double p = 0.0;
    for (std::size_t k = degree + 1; k-- > 0;) p = p * z[i] + coef[k];
    ys[i] = p + signs[i] * d;
  }
  double factor = 1.0;
  for (std::size_t i = 0; i < count; ++i)
    if (i != j && i != j + 1) factor *= (z[j + 1] - z[i]) / (z[j] - z[i]);

  PerturbationCase pc;
  pc.instance = one_d(z, ys, monomial_spec(degree));
  pc.reference.indices.resize(count);
  for (std::size_t i = 0; i < count; ++i) pc.reference.indices[i] = i;
  pc.reference.signs = signs;
  pc.reference.discrepancy = d;
  pc.reference.degree = degree;
  pc.reference.equioscillates = false;
  pc.j = j;
  pc.epsilon = uniform(rng, 0.1, 1.0) * std::min(0.1 * d, 0.5 * d / std::fabs(factor));
  return pc;
}

nlohmann::json instance_to_json(const ProblemInstance& instance) {
  nlohmann::json j;
  j["basis"] = instance.basis.to_spec();
  j["dimension"] = instance.p();
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : instance.points) pts.push_back(p.coordinates);
  j["points"] = std::move(pts);
  j["values"] = instance.values;
  if (instance.weights) j["weights"] = *instance.weights;
  if (!instance.row_scale.empty()) j["row_scale"] = instance.row_scale;
  return j;
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  ProblemInstance inst;
  inst.basis = parse_basis_spec(j.at("basis").get<std::string>(), j.at("dimension").get<std::size_t>());
  for (const auto& p : j.at("points")) inst.points.push_back({p.get<std::vector<double>>()});
  inst.values = j.at("values").get<std::vector<double>>();
  if (j.contains("weights")) inst.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("row_scale")) inst.row_scale = j.at("row_scale").get<std::vector<double>>();
  validate(inst);
  return inst;
}

namespace {

// Runs check on each instance; exceptions count as failures.
void record(PropertyOutcome& out, const ProblemInstance& inst, const std::function<std::string()>& check) {
  ++out.checked;
  std::string why;
  try {
    why = check();
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  if (why.empty()) {
    ++out.passed;
  } else if (!out.first_failure) {
    out.first_failure = instance_to_json(inst);
    out.failure_detail = why;
  }
}

}  // namespace

std::vector<PropertyOutcome> run_property_battery(std::uint64_t seed, std::size_t instances) {
  std::vector<PropertyOutcome> results;

  {
    Rng rng(seed);
    PropertyOutcome t1{"theorem1_active_points"}, t2{"theorem2_overshoot_undershoot"}, ids{"duality_identities"};
    for (std::size_t k = 0; k < instances; ++k) {
      const ProblemInstance inst = random_smooth_instance(rng, 50, 4);
      const FitResult f = fit(inst);
      record(t1, inst, [&]() -> std::string {
        return check_theorem1(f, inst.m()) ? "" : "only " + std::to_string(f.active_points.size()) + " active points";
      });
      record(t2, inst, [&]() -> std::string {
        const auto cert = extract_certificate(f.solution, inst);
        return check_theorem2(f, cert, inst) ? "" : "overshoot/undershoot or multiplier halves check failed";
      });
      record(ids, inst, [&]() -> std::string {
        const auto cert = extract_certificate(f.solution, inst);
        const auto rep = verify_identities(cert, f, inst);
        if (!rep.duality_pass) return "strong duality gap " + std::to_string(rep.strong_duality_gap);
        if (!rep.normalization_pass) return "sum of multipliers off by " + std::to_string(rep.normalization_residual);
        if (!rep.complementarity_pass) return "complementary slackness violated";
        if (!rep.orthogonality_pass) return "orthogonality residual too large";
        if (!rep.identity_h_pass) return "identity (h) residual " + std::to_string(rep.identity_h_residual);
        return "";
      });
    }
    results.push_back(std::move(t1));
    results.push_back(std::move(t2));
    results.push_back(std::move(ids));
  }

  {
    Rng rng(seed + 1);
    PropertyOutcome out{"oracle_equivalence"};
    for (std::size_t k = 0; k < instances; ++k) {
      const ProblemInstance inst = random_small_instance(rng, 12, 3);
      record(out, inst, [&]() -> std::string {
        const auto c = compare_with_oracle(fit(inst), brute_force_fit(inst), inst);
        return c.agrees ? "" : "discrepancy differs by " + std::to_string(c.discrepancy_difference);
      });
    }
    results.push_back(std::move(out));
  }

  {
    Rng rng(seed + 2);
    PropertyOutcome out{"equioscillation"};
    for (std::size_t k = 0; k < instances; ++k) {
      const std::size_t t = 1 + k % 3;
      const ProblemInstance inst = random_smooth_instance(rng, 30, t, 0.2);
      record(out, inst, [&]() -> std::string {
        const auto ref = alternation_pattern(fit(inst), inst);
        return ref.equioscillates ? "" : "residual signs at active points do not alternate";
      });
    }
    results.push_back(std::move(out));
  }

  {
    Rng rng(seed + 3);
    PropertyOutcome out{"weighted_rescale"};
    for (std::size_t k = 0; k < instances; ++k) {
      ProblemInstance inst = random_smooth_instance(rng, 20, 2, 0.1);
      inst.weights = random_weights(rng, inst.n(), 0.1, 10.0);
      record(out, inst, [&]() -> std::string {
        const FitResult a = fit(inst);
        const FitResult b = fit(prescaled(inst));
        if (std::fabs(a.discrepancy - b.discrepancy) > 1e-9) return "discrepancies differ";
        for (std::size_t j = 0; j < a.coefficients.size(); ++j)
          if (std::fabs(a.coefficients[j] - b.coefficients[j]) > 1e-8) return "coefficients differ";
        return "";
      });
    }
    results.push_back(std::move(out));
  }

  {
    Rng rng(seed + 4);
    PropertyOutcome out{"one_sided_construction"};
    for (std::size_t k = 0; k < instances; ++k) {
      const ProblemInstance inst = random_smooth_instance(rng, 20, 2, 0.1);
      record(out, inst, [&]() -> std::string {
        const FitResult f = fit(inst);
        std::size_t j = inst.n();
        for (std::size_t i : f.active_points)
          if (f.residuals[i] < 0.0) {
            j = i;
            break;
          }
        if (j == inst.n()) return "no overshoot point";
        const ProblemInstance flipped = one_sided_construction(inst, f, j);
        const FitResult g = fit(flipped);
        if (std::fabs(g.discrepancy - f.discrepancy) > 1e-9) return "discrepancy changed";
        for (std::size_t q = 0; q < f.coefficients.size(); ++q)
          if (std::fabs(g.coefficients[q] - f.coefficients[q]) > 1e-8) return "coefficients changed";
        if (alternation_pattern(g, flipped).equioscillates) return "flipped instance still alternates";
        return "";
      });
    }
    results.push_back(std::move(out));
  }

  return results;
}

}  // namespace minimax
