#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "causorbit/catalog.hpp"
#include "causorbit/report.hpp"
#include "causorbit/screening.hpp"

namespace causorbit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;   // parse or validation failure
inline constexpr int kExitConfig = 2;  // invalid flags or values

enum class OutputFormat { Json, Dot, Text, Matrix };

std::optional<OutputFormat> parse_format(std::string_view text);

struct RunConfig {
  ScreeningConfig screening;
  OutputFormat format = OutputFormat::Json;
  InputMode mode = InputMode::SeriesCsv;
  /// Built-in accommodation catalog when empty.
  std::optional<VariableCatalog> catalog;

  const VariableCatalog& active_catalog() const;
};

/// Series CSV -> full report on `out`.  Warnings go to `err`.
int run_analyze(const RunConfig& config, std::istream& series, std::ostream& out, std::ostream& err);

/// Edge-list text -> dynamics-only report on `out`.
int run_graph(const RunConfig& config, std::string_view edge_list, std::ostream& out, std::ostream& err);

/// Series CSV -> correlation matrix (`matrix` = CSV, `json`).
int run_correlate(const RunConfig& config, std::istream& series, std::ostream& out, std::ostream& err);

/// Entry point behind the `causorbit` executable.  `args[0]` is the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace causorbit::cli
