#include "causorbit/table.hpp"

#include <cmath>
#include <fmt/format.h>
#include <sstream>

#include "causorbit/errors.hpp"
#include "csv.hpp"

namespace causorbit {

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
  text = trim(text);
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  int value[2] = {0, 0};
  const std::string_view parts[2] = {text.substr(0, 4), text.substr(5, 2)};
  for (int k = 0; k < 2; ++k) {
    for (char c : parts[k]) {
      if (c < '0' || c > '9') return std::nullopt;
      value[k] = value[k] * 10 + (c - '0');
    }
  }
  if (value[1] < 1 || value[1] > 12) return std::nullopt;
  return YearMonth{value[0], value[1]};
}

std::string YearMonth::str() const { return fmt::format("{:04d}-{:02d}", year, month); }

std::vector<std::string> validate(const TimeSeriesTable& table) {
  std::vector<std::string> violations;
  if (table.periods.empty()) violations.emplace_back("empty table");
  if (table.catalog.empty()) violations.emplace_back("catalog has no variables");

  for (std::size_t t = 1; t < table.periods.size(); ++t) {
    const auto& prev = table.periods[t - 1];
    const auto& cur = table.periods[t];
    if (cur == prev) {
      violations.push_back("duplicate period " + cur.str() + " at row " + std::to_string(t + 1));
    } else if (cur < prev) {
      violations.push_back("period " + cur.str() + " at row " + std::to_string(t + 1) +
                           " is not after " + prev.str());
    }
  }

  if (table.columns.size() != table.catalog.size()) {
    violations.push_back(fmt::format("table has {} columns but catalog has {} variables",
                                     table.columns.size(), table.catalog.size()));
    return violations;
  }
  for (std::size_t v = 0; v < table.columns.size(); ++v) {
    const auto& col = table.columns[v];
    const auto& name = table.catalog.name(v);
    if (col.size() != table.periods.size()) {
      violations.push_back(fmt::format("column '{}' has {} values for {} periods", name,
                                       col.size(), table.periods.size()));
      continue;
    }
    for (std::size_t t = 0; t < col.size(); ++t) {
      const double x = col[t];
      if (!std::isfinite(x)) {
        violations.push_back(fmt::format("non-finite value at period {} (row {}), variable '{}'",
                                         table.periods[t].str(), t + 1, name));
      } else if (x < 0) {
        violations.push_back(fmt::format("negative value {} at period {} (row {}), variable '{}'",
                                         x, table.periods[t].str(), t + 1, name));
      }
    }
  }
  return violations;
}

TimeSeriesTable load_table(std::istream& source, const VariableCatalog& catalog) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(source, line)) {
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ValidationError("empty table");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  const auto header = detail::split_csv_line(line);
  if (!iequals(trim(header.front()), "period")) {
    throw ValidationError("first header must be 'period', got '" + header.front() + "'");
  }

  // file column -> catalog index
  std::vector<std::size_t> binding;
  std::vector<bool> seen(catalog.size(), false);
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto index = catalog.find(header[c]);
    if (!index) throw ValidationError("unknown variable '" + header[c] + "' in header");
    if (seen[*index]) throw ValidationError("variable '" + header[c] + "' appears twice in header");
    seen[*index] = true;
    binding.push_back(*index);
  }
  for (std::size_t v = 0; v < catalog.size(); ++v) {
    if (!seen[v]) throw ValidationError("missing variable '" + catalog.name(v) + "' in header");
  }

  TimeSeriesTable table{catalog, {}, std::vector<std::vector<double>>(catalog.size())};
  while (next_line()) {
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ParseError(fmt::format("line {}: expected {} cells, found {}", line_no, header.size(),
                                   cells.size()));
    }
    const auto period = YearMonth::parse(cells[0]);
    if (!period) throw ParseError(fmt::format("line {}: bad period '{}'", line_no, cells[0]));
    table.periods.push_back(*period);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double value = 0;
      if (trim(cells[c]).empty()) {
        throw ParseError(fmt::format("line {}: missing value for '{}'", line_no, header[c]));
      }
      if (!detail::parse_double(cells[c], value)) {
        throw ParseError(fmt::format("line {}: bad number '{}' for '{}'", line_no, cells[c], header[c]));
      }
      table.columns[binding[c - 1]].push_back(value);
    }
  }

  if (const auto violations = validate(table); !violations.empty()) {
    std::string message = violations.front();
    for (std::size_t k = 1; k < violations.size(); ++k) message += "; " + violations[k];
    throw ValidationError(message);
  }
  return table;
}

TimeSeriesTable load_table(std::string_view csv, const VariableCatalog& catalog) {
  std::istringstream in{std::string(csv)};
  return load_table(in, catalog);
}

std::string write_table_csv(const TimeSeriesTable& table) {
  std::string out = "period";
  for (const auto& name : table.catalog.names()) out += "," + detail::csv_field(name);
  out += '\n';
  for (std::size_t t = 0; t < table.periods.size(); ++t) {
    out += table.periods[t].str();
    for (const auto& col : table.columns) out += "," + detail::format_exact(col[t]);
    out += '\n';
  }
  return out;
}

}  // namespace causorbit
