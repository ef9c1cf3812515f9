#include "minimax/csv.hpp"

#include <charconv>
#include <cmath>

#include "minimax/error.hpp"

namespace minimax {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (!have_header) {
      for (auto c : cells) {
        if (c.empty()) throw InvalidInput("line " + std::to_string(line_no) + ": empty column name in header");
        table.header.emplace_back(c);
      }
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      throw InvalidInput("line " + std::to_string(line_no) + ": " + std::to_string(cells.size()) +
                         " cells, header has " + std::to_string(table.header.size()));
    std::vector<double> row(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto c = cells[k];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (c.empty() || ec != std::errc() || ptr != c.data() + c.size())
        throw InvalidInput("line " + std::to_string(line_no) + ": column '" + table.header[k] +
                           "' is not a number: '" + std::string(c) + "'");
      if (!std::isfinite(v))
        throw InvalidInput("line " + std::to_string(line_no) + ": column '" + table.header[k] +
                           "' is not finite: '" + std::string(c) + "'");
      row[k] = v;
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidInput("CSV input is empty (header row required)");
  return table;
}

ProblemInstance instance_from_csv(const CsvTable& table, std::string_view basis_spec,
                                  const CsvInstanceOptions& options) {
  std::vector<std::size_t> coord_cols;
  if (options.dimension) {
    const std::size_t p = *options.dimension;
    if (p == 0) throw InvalidInput("--dim must be at least 1");
    for (std::size_t k = 1; k <= p; ++k) {
      auto c = table.column("x" + std::to_string(k));
      if (!c && p == 1) c = table.column("x");
      if (!c) throw InvalidInput("missing coordinate column x" + std::to_string(k));
      coord_cols.push_back(*c);
    }
  } else {
    for (std::size_t k = 1;; ++k) {
      auto c = table.column("x" + std::to_string(k));
      if (!c) break;
      coord_cols.push_back(*c);
    }
    if (coord_cols.empty()) {
      if (auto c = table.column("x")) coord_cols.push_back(*c);
    }
    if (coord_cols.empty()) throw InvalidInput("no coordinate column (expected x or x1..xp)");
  }
  const auto ycol = table.column("y");
  if (!ycol) throw InvalidInput("missing value column y");
  std::optional<std::size_t> wcol;
  if (options.weight_column) {
    wcol = table.column(*options.weight_column);
    if (!wcol) throw InvalidInput("missing weight column '" + *options.weight_column + "'");
  }

  ProblemInstance inst;
  inst.basis = parse_basis_spec(basis_spec, coord_cols.size());
  if (wcol) inst.weights.emplace();
  for (const auto& row : table.rows) {
    EvaluationPoint pt;
    for (std::size_t c : coord_cols) pt.coordinates.push_back(row[c]);
    inst.points.push_back(std::move(pt));
    inst.values.push_back(row[*ycol]);
    if (wcol) inst.weights->push_back(row[*wcol]);
  }
  validate(inst);
  return inst;
}

}  // namespace minimax
