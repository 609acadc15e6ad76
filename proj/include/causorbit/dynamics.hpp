#pragma once

#include <cstddef>
#include <vector>

#include "causorbit/graph.hpp"
#include "causorbit/node_set.hpp"

namespace causorbit {

/// Forward iterates of a set under the structural function.
struct OrbitResult {
  /// f(S), f^2(S), ... up to the last iterate that still enlarged the union.
  /// Never longer than the number of nodes.
  std::vector<NodeSet> iterates;
  /// Union of the iterates.  S itself is included only if it is re-reached.
  NodeSet orbit;
};

struct AttractorFinding {
  NodeSet attractor;
  NodeSet basin;
  /// Intersection of the orbits of the basin members; must equal `attractor`.
  NodeSet witness;
};

/// f(S): every target of an edge leaving S.
NodeSet image(const CausalGraph& g, const NodeSet& s);

OrbitResult orbit(const CausalGraph& g, const NodeSet& s);

/// f(S) is contained in S.
bool is_invariant(const CausalGraph& g, const NodeSet& s);

/// `b` is contained in the one-step image of `a`.
bool covers(const CausalGraph& g, const NodeSet& a, const NodeSet& b);

/// Non-empty, strongly connected through edges inside `s`, and every member
/// lies on a cycle inside `s` (so a singleton needs a self-loop).
bool is_loop(const CausalGraph& g, const NodeSet& s);

/// Tarjan's algorithm; components ordered by smallest member.
std::vector<NodeSet> strongly_connected_components(const CausalGraph& g);

/// Terminal strongly connected components that contain at least one edge,
/// ordered by smallest member.
std::vector<NodeSet> attractors(const CausalGraph& g);

/// Nodes whose orbit meets `t`, plus `t`.  Throws DomainError if `t` is not
/// an attractor of `g`.
NodeSet basin(const CausalGraph& g, const NodeSet& t);

/// Intersection of orbit({x}) over x in `b`.  Throws DomainError if `b` is empty.
NodeSet orbit_intersection(const CausalGraph& g, const NodeSet& b);

/// Connected components of the underlying undirected graph, by smallest member.
std::vector<NodeSet> weak_components(const CausalGraph& g);

/// Row i is orbit({i}).
std::vector<NodeSet> reachability_matrix(const CausalGraph& g);

/// Nodes with no outgoing edge; their orbit is empty.
NodeSet sinks(const CausalGraph& g);

/// Each attractor with its basin and the orbit-intersection witness.
/// Throws std::logic_error if a witness differs from its attractor.
std::vector<AttractorFinding> find_attractors(const CausalGraph& g);

/// Weak components with at least two members that contain an internal cycle
/// but no attractor: activity stays inside the block without settling into
/// a terminal loop.
std::vector<NodeSet> endogamous_blocks(const CausalGraph& g);

}  // namespace causorbit
