#pragma once
#include <string>
#include <vector>

#include "minimax/fit.hpp"

namespace minimax::testing {

inline ProblemInstance line_instance(const std::vector<double>& xs, const std::vector<double>& ys,
                                     const std::string& spec) {
  ProblemInstance inst;
  for (double x : xs) inst.points.push_back({{x}});
  inst.values = ys;
  inst.basis = parse_basis_spec(spec, 1);
  return inst;
}

}  // namespace minimax::testing
