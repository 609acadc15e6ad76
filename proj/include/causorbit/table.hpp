#pragma once

#include <compare>
#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causorbit/catalog.hpp"

namespace causorbit {

struct YearMonth {
  int year = 0;
  int month = 1;

  /// Parses `YYYY-MM`; rejects anything else.
  static std::optional<YearMonth> parse(std::string_view text);
  std::string str() const;

  friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

/// Months x variables panel of non-negative counts.  Stored column-major:
/// `columns[v][t]` is variable v at period t.
///
/// The type itself does not enforce its invariants so that `validate` can
/// report on arbitrary data; `load_table` only ever returns valid tables.
struct TimeSeriesTable {
  VariableCatalog catalog;
  std::vector<YearMonth> periods;
  std::vector<std::vector<double>> columns;

  std::size_t num_periods() const { return periods.size(); }
  std::size_t num_variables() const { return catalog.size(); }
  std::span<const double> column(std::size_t variable) const { return columns.at(variable); }
};

/// Lists every invariant violation, each naming its period and/or variable.
std::vector<std::string> validate(const TimeSeriesTable& table);

/// Reads the wide CSV format: a `period` column with `YYYY-MM` values followed
/// by one column per catalog variable in any order.  Headers are bound to the
/// catalog case-insensitively; the result is in catalog order.
/// Throws ParseError or ValidationError.
TimeSeriesTable load_table(std::istream& source, const VariableCatalog& catalog);
TimeSeriesTable load_table(std::string_view csv, const VariableCatalog& catalog);

/// Writes the same wide format, columns in catalog order.  Values are printed
/// with enough digits to read back exactly.
std::string write_table_csv(const TimeSeriesTable& table);

}  // namespace causorbit
