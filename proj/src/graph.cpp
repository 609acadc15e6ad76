#include "causorbit/graph.hpp"

#include <algorithm>
#include <fmt/format.h>

#include "causorbit/errors.hpp"

namespace causorbit {

CausalGraph::CausalGraph(VariableCatalog catalog, std::vector<Edge> edges)
    : catalog_(std::move(catalog)),
      edges_(std::move(edges)),
      successors_(catalog_.size()),
      predecessors_(catalog_.size()) {
  const std::size_t n = catalog_.size();
  for (const auto& [s, t] : edges_) {
    if (s >= n || t >= n) {
      throw ValidationError(fmt::format("edge {} -> {} has an endpoint outside ids 1..{}", id_of(s),
                                        id_of(t), n));
    }
  }
  std::ranges::sort(edges_);
  if (const auto dup = std::ranges::adjacent_find(edges_); dup != edges_.end()) {
    throw ValidationError(fmt::format("duplicate edge {} -> {}", catalog_.name(dup->first),
                                      catalog_.name(dup->second)));
  }
  for (const auto& [s, t] : edges_) {
    successors_[s].push_back(t);
    predecessors_[t].push_back(s);
  }
  for (auto& p : predecessors_) std::ranges::sort(p);
}

bool CausalGraph::has_edge(std::size_t source, std::size_t target) const {
  return std::ranges::binary_search(successors_.at(source), target);
}

CausalGraph parse_edge_list(std::string_view text, const VariableCatalog& catalog) {
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos || line.find("->", arrow + 2) != std::string_view::npos) {
      throw ParseError(fmt::format("line {}: expected 'source -> target'", line_no));
    }
    const auto lhs = trim(line.substr(0, arrow));
    const auto rhs = trim(line.substr(arrow + 2));
    const auto s = catalog.resolve(lhs);
    if (!s) throw ParseError(fmt::format("line {}: unknown node '{}'", line_no, lhs));
    const auto t = catalog.resolve(rhs);
    if (!t) throw ParseError(fmt::format("line {}: unknown node '{}'", line_no, rhs));
    edges.emplace_back(*s, *t);
  }
  return CausalGraph(catalog, std::move(edges));
}

std::string write_edge_list(const CausalGraph& g) {
  std::string out;
  for (const auto& [s, t] : g.edges()) {
    out += g.catalog().name(s) + " -> " + g.catalog().name(t) + "\n";
  }
  return out;
}

}  // namespace causorbit
