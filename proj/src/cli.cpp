#include "causorbit/cli.hpp"

#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "causorbit/errors.hpp"
#include "json.hpp"

namespace causorbit::cli {

namespace {

const VariableCatalog& default_catalog() {
  static const VariableCatalog catalog = builtin_catalog();
  return catalog;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs `body`, mapping exceptions to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int emit_report(const AnalysisReport& report, OutputFormat format, std::ostream& out, std::ostream& err) {
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  switch (format) {
    case OutputFormat::Json:
      out << to_json(report);
      break;
    case OutputFormat::Dot: {
      std::vector<AttractorFinding> findings;
      for (const auto& f : report.attractors) findings.push_back(f.finding);
      out << to_dot(report.graph, findings);
      break;
    }
    case OutputFormat::Text:
      out << summary_text(report);
      break;
    case OutputFormat::Matrix:
      out << matrix_csv(reachability_matrix(report.graph), report.graph.catalog());
      break;
  }
  return kExitOk;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "dot") return OutputFormat::Dot;
  if (text == "text") return OutputFormat::Text;
  if (text == "matrix") return OutputFormat::Matrix;
  return std::nullopt;
}

const VariableCatalog& RunConfig::active_catalog() const { return catalog ? *catalog : default_catalog(); }

int run_analyze(const RunConfig& config, std::istream& series, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.screening.check();
    const auto table = load_table(series, config.active_catalog());
    return emit_report(analyze_series(table, config.screening), config.format, out, err);
  });
}

int run_graph(const RunConfig& config, std::string_view edge_list, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.screening.check();
    const auto graph = parse_edge_list(edge_list, config.active_catalog());
    return emit_report(analyze_graph(graph, config.screening), config.format, out, err);
  });
}

int run_correlate(const RunConfig& config, std::istream& series, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.screening.check();
    if (config.format != OutputFormat::Matrix && config.format != OutputFormat::Json) {
      throw ConfigError("correlate supports --format matrix or json");
    }
    const auto table = load_table(series, config.active_catalog());
    const auto m = correlation_matrix(table);
    if (config.format == OutputFormat::Matrix) {
      out << matrix_csv(m);
      return kExitOk;
    }
    // Same 6-significant-digit convention as the analysis report.
    nlohmann::ordered_json doc;
    doc["variables"] = m.catalog().names();
    auto matrix = nlohmann::ordered_json::array();
    auto defined = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto row = nlohmann::ordered_json::array();
      auto flags = nlohmann::ordered_json::array();
      for (std::size_t j = 0; j < m.size(); ++j) {
        const auto v = m.at(i, j);
        row.push_back(v ? nlohmann::ordered_json(std::stod(fmt::format("{:.6g}", *v)))
                        : nlohmann::ordered_json(nullptr));
        flags.push_back(v.has_value());
      }
      matrix.push_back(std::move(row));
      defined.push_back(std::move(flags));
    }
    doc["matrix"] = std::move(matrix);
    doc["defined"] = std::move(defined);
    out << doc.dump(2) << "\n";
    return kExitOk;
  });
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal screening and orbit/attractor analysis of time-series panels", "causorbit"};
  app.require_subcommand(1);

  struct Flags {
    double threshold = 0.7;
    std::string binarize = "median";
    double margin = 0.0;
    bool absolute = false;
    std::string format;
    std::string catalog_path;
    std::string graph_path;
    std::string series_path;
  } flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--threshold", flags.threshold, "Correlation threshold in (0, 1]");
    cmd->add_option("--binarize", flags.binarize, "Event coding: median, mean or diff");
    cmd->add_option("--margin", flags.margin, "Minimum P(B|A) - P(B|not A) to keep an edge");
    cmd->add_flag("--absolute", flags.absolute, "Screen on |r| instead of r");
    cmd->add_option("--catalog", flags.catalog_path, "Variable names, one per line (default: built-in)");
  };

  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline, or analyse an edge list");
  add_common(analyze);
  analyze->add_option("--format", flags.format, "json, dot, text or matrix")->default_str("json");
  auto* graph_opt = analyze->add_option("--graph", flags.graph_path, "Edge-list file (skips statistics)");
  auto* series_opt = analyze->add_option("series", flags.series_path, "Series CSV file");
  graph_opt->excludes(series_opt);

  auto* correlate = app.add_subcommand("correlate", "Print the correlation matrix of a series CSV");
  add_common(correlate);
  correlate->add_option("--format", flags.format, "matrix or json")->default_str("matrix");
  correlate->add_option("series", flags.series_path, "Series CSV file")->required();

  std::vector<std::string> argv(args.begin(), args.end());
  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  RunConfig config;
  const bool is_correlate = correlate->parsed();
  const auto rule = parse_binarize_rule(flags.binarize);
  if (!rule) {
    err << "error: unknown --binarize value '" << flags.binarize << "'\n";
    return kExitConfig;
  }
  const auto format = parse_format(flags.format.empty() ? (is_correlate ? "matrix" : "json") : flags.format);
  if (!format) {
    err << "error: unknown --format value '" << flags.format << "'\n";
    return kExitConfig;
  }
  config.screening = {flags.threshold, *rule, flags.margin, flags.absolute};
  config.format = *format;

  const int status = guarded(err, [&] {
    config.screening.check();
    if (!flags.catalog_path.empty()) config.catalog = parse_catalog(read_file(flags.catalog_path));
    return kExitOk;
  });
  if (status != kExitOk) return status;

  if (!is_correlate && !flags.graph_path.empty()) {
    config.mode = InputMode::EdgeList;
    std::string text;
    if (const int s = guarded(err, [&] { text = read_file(flags.graph_path); return kExitOk; }); s != kExitOk) {
      return s;
    }
    return run_graph(config, text, out, err);
  }
  if (flags.series_path.empty()) {
    err << "error: a series CSV path or --graph is required\n";
    return kExitConfig;
  }
  std::ifstream series(flags.series_path, std::ios::binary);
  if (!series) {
    err << "error: cannot open '" << flags.series_path << "'\n";
    return kExitInput;
  }
  return is_correlate ? run_correlate(config, series, out, err) : run_analyze(config, series, out, err);
}

}  // namespace causorbit::cli
