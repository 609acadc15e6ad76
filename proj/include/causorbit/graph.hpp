#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "causorbit/catalog.hpp"
#include "causorbit/node_set.hpp"

namespace causorbit {

using Edge = std::pair<std::size_t, std::size_t>;  // (source, target), 0-based

/// Finite directed graph over a catalog.  An edge x -> y reads "x is a cause
/// of y"; the structural function maps x to its direct effects.
/// Immutable after construction.  Self-loops are allowed, duplicates are not.
class CausalGraph {
 public:
  CausalGraph() = default;
  /// Throws ValidationError on an out-of-range endpoint or a duplicate edge.
  CausalGraph(VariableCatalog catalog, std::vector<Edge> edges);

  const VariableCatalog& catalog() const { return catalog_; }
  std::size_t num_nodes() const { return catalog_.size(); }
  /// Sorted by (source, target).
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const std::size_t> successors(std::size_t node) const { return successors_[node]; }
  std::span<const std::size_t> predecessors(std::size_t node) const { return predecessors_[node]; }
  bool has_edge(std::size_t source, std::size_t target) const;

  NodeSet empty_set() const { return NodeSet(num_nodes()); }
  NodeSet singleton(std::size_t node) const { return NodeSet(num_nodes(), {node}); }
  NodeSet all_nodes() const { return NodeSet::full(num_nodes()); }

 private:
  VariableCatalog catalog_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<std::vector<std::size_t>> predecessors_;
};

/// Edge-list text: one `source -> target` per line, endpoints given by
/// catalog name (case-insensitive) or 1-based id.  `#` starts a comment and
/// blank lines are ignored.  Throws ParseError for malformed lines or unknown
/// names, ValidationError for duplicate edges.
CausalGraph parse_edge_list(std::string_view text, const VariableCatalog& catalog);

/// Inverse of parse_edge_list, one `name -> name` per line.
std::string write_edge_list(const CausalGraph& g);

}  // namespace causorbit
