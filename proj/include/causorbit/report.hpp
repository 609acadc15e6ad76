#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causorbit/dynamics.hpp"
#include "causorbit/graph.hpp"
#include "causorbit/screening.hpp"
#include "causorbit/table.hpp"

namespace causorbit {

enum class InputMode { SeriesCsv, EdgeList };

/// One directed edge of the analysed graph.  `stats` is present when the edge
/// came from orientation, absent for user-supplied edge lists.
struct ReportEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::optional<ConditioningStats> stats;
};

struct ReportFinding {
  AttractorFinding finding;
  /// Basin members outside the attractor: where campaigns pay off for the
  /// attractor too.
  NodeSet campaign_target;
};

struct AnalysisReport {
  ScreeningConfig config;
  InputMode mode = InputMode::SeriesCsv;

  std::optional<CorrelationMatrix> correlations;
  std::vector<CandidatePair> pairs;
  CausalGraph graph;
  std::vector<ReportEdge> edges;

  std::vector<OrbitResult> orbits;  // one per node, seeded with {node}
  std::vector<NodeSet> weak_components;
  std::vector<NodeSet> invariant_blocks;
  NodeSet sinks;
  std::vector<ReportFinding> attractors;
  std::vector<std::string> warnings;
};

/// Full pipeline: correlations, pair selection, binarization, orientation,
/// then the dynamics analysis of the oriented graph.
AnalysisReport analyze_series(const TimeSeriesTable& table, const ScreeningConfig& config);

/// Dynamics-only analysis of a given graph.
AnalysisReport analyze_graph(const CausalGraph& g, const ScreeningConfig& config = {});

/// Deterministic JSON.  Sets are arrays of 1-based ids in ascending order.
std::string to_json(const AnalysisReport& r);

/// Graphviz digraph.  Attractor nodes are filled red, other basin nodes are
/// filled yellow; node ids are catalog ids and labels are names.
std::string to_dot(const CausalGraph& g, const std::vector<AttractorFinding>& findings = {});

/// Reads back the node and edge statements emitted by to_dot.
CausalGraph graph_from_dot(std::string_view dot);

std::string summary_text(const AnalysisReport& r);

/// CSV with a name header row and a name first column.  Booleans print as
/// 0/1, undefined numeric cells as NA.  Throws DomainError if the matrix is
/// not square over the catalog.
std::string matrix_csv(const std::vector<NodeSet>& m, const VariableCatalog& catalog);
std::string matrix_csv(const CorrelationMatrix& m);

/// Parsed form of matrix_csv output.
struct LabeledMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<std::optional<double>>> cells;
};
LabeledMatrix parse_matrix_csv(std::string_view csv);

}  // namespace causorbit
