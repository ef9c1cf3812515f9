#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minimax/fit.hpp"

namespace minimax {

/// Numeric CSV with a required header row. Throws InvalidInput (with a line
/// number) on malformed, ragged or non-finite cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);

struct CsvInstanceOptions {
  std::optional<std::size_t> dimension;     // inferred from x / x1..xp columns when absent
  std::optional<std::string> weight_column;
};

/// Coordinates come from columns x (p = 1) or x1..xp, values from column y.
/// Throws InvalidInput for missing columns and ParseError/DimensionError from the basis spec.
ProblemInstance instance_from_csv(const CsvTable& table, std::string_view basis_spec,
                                  const CsvInstanceOptions& options = {});

}  // namespace minimax
