#include "causorbit/report.hpp"

#include <cmath>
#include <fmt/format.h>
#include "json.hpp"

#include "causorbit/errors.hpp"
#include "csv.hpp"

namespace causorbit {

namespace {

using Json = nlohmann::ordered_json;

void fill_dynamics(AnalysisReport& r) {
  const auto& g = r.graph;
  for (std::size_t x = 0; x < g.num_nodes(); ++x) r.orbits.push_back(orbit(g, g.singleton(x)));
  r.weak_components = weak_components(g);
  r.invariant_blocks = endogamous_blocks(g);
  r.sinks = sinks(g);
  for (auto& f : find_attractors(g)) {
    auto target = f.basin - f.attractor;
    r.attractors.push_back({std::move(f), std::move(target)});
  }
}

// Six significant digits, so the emitted text is stable across platforms.
double round6(double x) { return std::stod(fmt::format("{:.6g}", x)); }

Json ids(const NodeSet& s) {
  Json out = Json::array();
  for (auto m : s.members()) out.push_back(id_of(m));
  return out;
}

Json probability(const std::optional<double>& p) { return p ? Json(round6(*p)) : Json(nullptr); }

std::string names_of(const NodeSet& s, const VariableCatalog& c) {
  if (s.empty()) return "(none)";
  std::string out;
  for (auto m : s.members()) {
    if (!out.empty()) out += ", ";
    out += fmt::format("{} ({})", c.name(m), id_of(m));
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

AnalysisReport analyze_series(const TimeSeriesTable& table, const ScreeningConfig& config) {
  config.check();
  AnalysisReport r;
  r.config = config;
  r.mode = InputMode::SeriesCsv;
  r.correlations = correlation_matrix(table);
  r.pairs = select_pairs(*r.correlations, config.threshold, config.absolute);
  const auto events = binarize(table, config.rule);
  auto oriented = orient(r.pairs, events, config.margin);

  std::vector<Edge> edges;
  for (const auto& e : oriented.edges) {
    edges.emplace_back(e.source, e.target);
    r.edges.push_back({e.source, e.target, e.stats});
  }
  r.graph = CausalGraph(table.catalog, std::move(edges));
  r.warnings = std::move(oriented.warnings);
  fill_dynamics(r);
  return r;
}

AnalysisReport analyze_graph(const CausalGraph& g, const ScreeningConfig& config) {
  AnalysisReport r;
  r.config = config;
  r.mode = InputMode::EdgeList;
  r.graph = g;
  for (const auto& [s, t] : g.edges()) r.edges.push_back({s, t, std::nullopt});
  fill_dynamics(r);
  return r;
}

std::string to_json(const AnalysisReport& r) {
  const auto& catalog = r.graph.catalog();
  Json doc;
  doc["config"] = {
      {"threshold", r.config.threshold},
      {"binarize", to_string(r.config.rule)},
      {"margin", r.config.margin},
      {"absolute", r.config.absolute},
      {"input", r.mode == InputMode::SeriesCsv ? "series-csv" : "edge-list"},
  };

  Json nodes = Json::array();
  for (std::size_t i = 0; i < catalog.size(); ++i) nodes.push_back({{"id", id_of(i)}, {"name", catalog.name(i)}});
  doc["nodes"] = std::move(nodes);

  if (r.correlations) {
    Json matrix = Json::array();
    Json defined = Json::array();
    for (std::size_t i = 0; i < r.correlations->size(); ++i) {
      Json row = Json::array();
      Json flags = Json::array();
      for (std::size_t j = 0; j < r.correlations->size(); ++j) {
        const auto v = r.correlations->at(i, j);
        row.push_back(probability(v));
        flags.push_back(v.has_value());
      }
      matrix.push_back(std::move(row));
      defined.push_back(std::move(flags));
    }
    doc["correlations"] = {{"matrix", std::move(matrix)}, {"defined", std::move(defined)}};
  } else {
    doc["correlations"] = nullptr;
  }

  Json pairs = Json::array();
  for (const auto& p : r.pairs) pairs.push_back({{"i", id_of(p.i)}, {"j", id_of(p.j)}, {"r", round6(p.r)}});
  doc["pairs"] = std::move(pairs);

  Json edges = Json::array();
  for (const auto& e : r.edges) {
    Json entry = {{"source", id_of(e.source)}, {"target", id_of(e.target)}};
    entry["p_given"] = e.stats ? probability(e.stats->p_given) : Json(nullptr);
    entry["p_given_not"] = e.stats ? probability(e.stats->p_given_not) : Json(nullptr);
    edges.push_back(std::move(entry));
  }
  doc["edges"] = std::move(edges);

  Json orbits = Json::array();
  for (std::size_t x = 0; x < r.orbits.size(); ++x) {
    Json iterates = Json::array();
    for (const auto& it : r.orbits[x].iterates) iterates.push_back(ids(it));
    orbits.push_back({{"node", id_of(x)}, {"iterates", std::move(iterates)}, {"orbit", ids(r.orbits[x].orbit)}});
  }
  doc["orbits"] = std::move(orbits);

  Json weak = Json::array();
  for (const auto& c : r.weak_components) weak.push_back(ids(c));
  doc["weak_components"] = std::move(weak);
  Json blocks = Json::array();
  for (const auto& c : r.invariant_blocks) blocks.push_back(ids(c));
  doc["invariant_blocks"] = std::move(blocks);
  doc["sinks"] = ids(r.sinks);

  Json found = Json::array();
  for (const auto& f : r.attractors) {
    found.push_back({
        {"attractor", ids(f.finding.attractor)},
        {"basin", ids(f.finding.basin)},
        {"witness", ids(f.finding.witness)},
        {"campaign_target", ids(f.campaign_target)},
    });
  }
  doc["attractors"] = std::move(found);
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

std::string to_dot(const CausalGraph& g, const std::vector<AttractorFinding>& findings) {
  NodeSet in_attractor = g.empty_set();
  NodeSet in_basin = g.empty_set();
  for (const auto& f : findings) {
    in_attractor |= f.attractor;
    in_basin |= f.basin;
  }

  std::string out = "digraph causal {\n  node [shape=box];\n";
  for (std::size_t x = 0; x < g.num_nodes(); ++x) {
    out += fmt::format("  {} [label=\"{}\"", id_of(x), dot_escape(g.catalog().name(x)));
    if (in_attractor.contains(x)) {
      out += ", role=\"attractor\", style=filled, fillcolor=\"#f4a6a6\"";
    } else if (in_basin.contains(x)) {
      out += ", role=\"basin\", style=filled, fillcolor=\"#fbe7a1\"";
    }
    out += "];\n";
  }
  for (const auto& [s, t] : g.edges()) out += fmt::format("  {} -> {};\n", id_of(s), id_of(t));
  out += "}\n";
  return out;
}

CausalGraph graph_from_dot(std::string_view dot) {
  std::vector<std::pair<std::size_t, std::string>> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> id_edges;

  auto read_id = [](std::string_view token, std::size_t line_no) {
    double value = 0;
    if (!detail::parse_double(token, value) || value < 1 || value != std::floor(value)) {
      throw ParseError(fmt::format("dot line {}: bad node id '{}'", line_no, token));
    }
    return static_cast<std::size_t>(value);
  };

  std::size_t line_no = 0;
  while (!dot.empty()) {
    const auto nl = dot.find('\n');
    auto line = trim(dot.substr(0, nl));
    dot = nl == std::string_view::npos ? std::string_view{} : dot.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.starts_with("digraph") || line == "}" || line.starts_with("node ")) continue;
    if (line.ends_with(';')) line.remove_suffix(1);

    if (const auto arrow = line.find("->"); arrow != std::string_view::npos) {
      id_edges.emplace_back(read_id(trim(line.substr(0, arrow)), line_no),
                            read_id(trim(line.substr(arrow + 2)), line_no));
      continue;
    }
    const auto bracket = line.find('[');
    const auto label = line.find("label=\"");
    if (bracket == std::string_view::npos || label == std::string_view::npos) {
      throw ParseError(fmt::format("dot line {}: unrecognised statement", line_no));
    }
    std::string name;
    std::size_t k = label + 7;
    for (; k < line.size() && line[k] != '"'; ++k) {
      if (line[k] == '\\' && k + 1 < line.size()) ++k;
      name += line[k];
    }
    if (k == line.size()) throw ParseError(fmt::format("dot line {}: unterminated label", line_no));
    nodes.emplace_back(read_id(trim(line.substr(0, bracket)), line_no), std::move(name));
  }

  std::ranges::sort(nodes);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].first != k + 1) throw ParseError("dot: node ids are not 1..n");
    names.push_back(std::move(nodes[k].second));
  }
  std::vector<Edge> edges;
  for (const auto& [s, t] : id_edges) edges.emplace_back(s - 1, t - 1);
  return CausalGraph(VariableCatalog(std::move(names)), std::move(edges));
}

std::string summary_text(const AnalysisReport& r) {
  const auto& g = r.graph;
  const auto& c = g.catalog();
  std::string out = fmt::format("Causal graph: {} nodes, {} edges\n", g.num_nodes(), g.edges().size());
  if (r.mode == InputMode::SeriesCsv) {
    out += fmt::format("Screening: threshold {}{}, binarization {}, margin {}; {} candidate pairs\n",
                       r.config.threshold, r.config.absolute ? " (absolute)" : "",
                       to_string(r.config.rule), r.config.margin, r.pairs.size());
  }
  out += "\n";

  if (r.attractors.empty()) {
    out += "No attractors found.\n";
  }
  for (std::size_t k = 0; k < r.attractors.size(); ++k) {
    const auto& f = r.attractors[k];
    out += fmt::format("Attractor {}: {}\n", k + 1, names_of(f.finding.attractor, c));
    out += fmt::format("  basin of attraction: {}\n", names_of(f.finding.basin, c));
    out += fmt::format("  campaign targets (basin outside the attractor): {}\n",
                       names_of(f.campaign_target, c));
  }

  out += "\nEndogamous blocks (isolated, self-sustaining):\n";
  if (r.invariant_blocks.empty()) out += "  (none)\n";
  for (const auto& b : r.invariant_blocks) out += "  " + names_of(b, c) + "\n";

  out += "\nWeak components:\n";
  for (const auto& b : r.weak_components) out += "  " + names_of(b, c) + "\n";

  out += "\nNodes without orbit (zero rows in the reachability matrix):\n  " + names_of(r.sinks, c) + "\n";

  if (!r.warnings.empty()) {
    out += "\nWarnings:\n";
    for (const auto& w : r.warnings) out += "  " + w + "\n";
  }
  return out;
}

namespace {

std::string matrix_header(const VariableCatalog& catalog) {
  std::string out = "variable";
  for (const auto& name : catalog.names()) out += "," + detail::csv_field(name);
  return out + "\n";
}

}  // namespace

std::string matrix_csv(const std::vector<NodeSet>& m, const VariableCatalog& catalog) {
  if (m.size() != catalog.size()) {
    throw DomainError(fmt::format("matrix has {} rows for {} variables", m.size(), catalog.size()));
  }
  std::string out = matrix_header(catalog);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].universe() != catalog.size()) throw DomainError("matrix row width differs from catalog size");
    out += detail::csv_field(catalog.name(i));
    for (std::size_t j = 0; j < catalog.size(); ++j) out += m[i].contains(j) ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

std::string matrix_csv(const CorrelationMatrix& m) {
  const auto& catalog = m.catalog();
  std::string out = matrix_header(catalog);
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += detail::csv_field(catalog.name(i));
    for (std::size_t j = 0; j < m.size(); ++j) {
      const auto v = m.at(i, j);
      out += v ? "," + detail::format_exact(*v) : std::string(",NA");
    }
    out += "\n";
  }
  return out;
}

LabeledMatrix parse_matrix_csv(std::string_view csv) {
  LabeledMatrix out;
  std::vector<std::string_view> lines;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    if (auto line = csv.substr(0, nl); !trim(line).empty()) lines.push_back(line);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
  }
  if (lines.empty()) throw ParseError("matrix csv: empty input");
  auto header = detail::split_csv_line(lines.front());
  out.names.assign(header.begin() + 1, header.end());
  if (lines.size() != out.names.size() + 1) throw ParseError("matrix csv: not square");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = detail::split_csv_line(lines[i]);
    if (cells.size() != header.size()) throw ParseError(fmt::format("matrix csv: row {} has wrong width", i));
    if (cells.front() != out.names[i - 1]) throw ParseError(fmt::format("matrix csv: row {} label mismatch", i));
    std::vector<std::optional<double>> row;
    for (std::size_t j = 1; j < cells.size(); ++j) {
      double v = 0;
      if (trim(cells[j]) == "NA") {
        row.emplace_back();
      } else if (detail::parse_double(cells[j], v)) {
        row.emplace_back(v);
      } else {
        throw ParseError(fmt::format("matrix csv: bad cell '{}'", cells[j]));
      }
    }
    out.cells.push_back(std::move(row));
  }
  return out;
}

}  // namespace causorbit
