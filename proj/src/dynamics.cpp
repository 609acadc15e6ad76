#include "causorbit/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

#include "causorbit/errors.hpp"

namespace causorbit {

NodeSet image(const CausalGraph& g, const NodeSet& s) {
  NodeSet out = g.empty_set();
  for (auto x : s.members()) {
    for (auto y : g.successors(x)) out.insert(y);
  }
  return out;
}

OrbitResult orbit(const CausalGraph& g, const NodeSet& s) {
  OrbitResult result{{}, g.empty_set()};
  NodeSet current = s;
  for (;;) {
    current = image(g, current);
    if (current.is_subset_of(result.orbit)) break;
    result.orbit |= current;
    result.iterates.push_back(current);
  }
  return result;
}

bool is_invariant(const CausalGraph& g, const NodeSet& s) { return image(g, s).is_subset_of(s); }

bool covers(const CausalGraph& g, const NodeSet& a, const NodeSet& b) {
  return b.is_subset_of(image(g, a));
}

namespace {

// Nodes reachable from `start` in one or more steps, restricted to `within`.
NodeSet reach_within(const CausalGraph& g, std::size_t start, const NodeSet& within) {
  NodeSet seen = g.empty_set();
  std::vector<std::size_t> stack{start};
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (auto y : g.successors(x)) {
      if (within.contains(y) && !seen.contains(y)) {
        seen.insert(y);
        stack.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_loop(const CausalGraph& g, const NodeSet& s) {
  if (s.empty()) return false;
  // Every member reaching every member (itself included) in >= 1 step covers
  // both mutual reachability and the on-a-cycle condition.
  for (auto x : s.members()) {
    if (!s.is_subset_of(reach_within(g, x, s))) return false;
  }
  return true;
}

std::vector<NodeSet> strongly_connected_components(const CausalGraph& g) {
  const std::size_t n = g.num_nodes();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<NodeSet> components;
  std::size_t counter = 0;

  // Iterative DFS: frame = (node, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto succ = g.successors(v);
      if (pos < succ.size()) {
        const auto w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      frames.pop_back();
      if (!frames.empty()) {
        auto& parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        NodeSet component = g.empty_set();
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.insert(w);
        } while (w != done);
        components.push_back(std::move(component));
      }
    }
  }

  std::ranges::sort(components, {}, [](const NodeSet& c) { return c.front(); });
  return components;
}

std::vector<NodeSet> attractors(const CausalGraph& g) {
  std::vector<NodeSet> out;
  for (auto& component : strongly_connected_components(g)) {
    bool has_internal_edge = false;
    bool escapes = false;
    for (auto x : component.members()) {
      for (auto y : g.successors(x)) {
        if (component.contains(y)) {
          has_internal_edge = true;
        } else {
          escapes = true;
        }
      }
    }
    if (has_internal_edge && !escapes) out.push_back(std::move(component));
  }
  return out;
}

NodeSet basin(const CausalGraph& g, const NodeSet& t) {
  const auto all = attractors(g);
  if (std::ranges::find(all, t) == all.end()) throw DomainError("basin: set is not an attractor");

  // Backward search from t over predecessors.
  NodeSet result = t;
  std::vector<std::size_t> stack = t.members();
  while (!stack.empty()) {
    const auto y = stack.back();
    stack.pop_back();
    for (auto x : g.predecessors(y)) {
      if (!result.contains(x)) {
        result.insert(x);
        stack.push_back(x);
      }
    }
  }
  return result;
}

NodeSet orbit_intersection(const CausalGraph& g, const NodeSet& b) {
  if (b.empty()) throw DomainError("orbit_intersection: empty set");
  NodeSet result = g.all_nodes();
  for (auto x : b.members()) result &= orbit(g, g.singleton(x)).orbit;
  return result;
}

std::vector<NodeSet> weak_components(const CausalGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeSet> out;
  NodeSet assigned = g.empty_set();
  for (std::size_t root = 0; root < n; ++root) {
    if (assigned.contains(root)) continue;
    NodeSet component = g.singleton(root);
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (const auto neighbours : {g.successors(x), g.predecessors(x)}) {
        for (auto y : neighbours) {
          if (!component.contains(y)) {
            component.insert(y);
            stack.push_back(y);
          }
        }
      }
    }
    assigned |= component;
    out.push_back(std::move(component));
  }
  return out;
}

std::vector<NodeSet> reachability_matrix(const CausalGraph& g) {
  std::vector<NodeSet> rows;
  rows.reserve(g.num_nodes());
  for (std::size_t x = 0; x < g.num_nodes(); ++x) rows.push_back(reach_within(g, x, g.all_nodes()));
  return rows;
}

NodeSet sinks(const CausalGraph& g) {
  NodeSet out = g.empty_set();
  for (std::size_t x = 0; x < g.num_nodes(); ++x) {
    if (g.successors(x).empty()) out.insert(x);
  }
  return out;
}

std::vector<AttractorFinding> find_attractors(const CausalGraph& g) {
  std::vector<AttractorFinding> out;
  for (auto& t : attractors(g)) {
    auto b = basin(g, t);
    auto witness = orbit_intersection(g, b);
    if (witness != t) throw std::logic_error("attractor differs from the orbit intersection of its basin");
    out.push_back({std::move(t), std::move(b), std::move(witness)});
  }
  return out;
}

std::vector<NodeSet> endogamous_blocks(const CausalGraph& g) {
  const auto found = attractors(g);
  const auto components = strongly_connected_components(g);
  std::vector<NodeSet> out;
  for (auto& block : weak_components(g)) {
    if (block.size() < 2) continue;
    const bool has_attractor =
        std::ranges::any_of(found, [&](const NodeSet& t) { return t.is_subset_of(block); });
    if (has_attractor) continue;
    const bool has_cycle = std::ranges::any_of(components, [&](const NodeSet& c) {
      return c.is_subset_of(block) && is_loop(g, c);
    });
    if (has_cycle) out.push_back(std::move(block));
  }
  return out;
}

}  // namespace causorbit
