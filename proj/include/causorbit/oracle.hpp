#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "causorbit/graph.hpp"
#include "causorbit/node_set.hpp"
#include "causorbit/table.hpp"

// Brute-force references and synthetic data for the test suites.  Nothing in
// here calls into the dynamics or screening code.
namespace causorbit::oracle {

inline constexpr std::size_t kBruteOrbitCap = 16;
inline constexpr std::size_t kBruteAttractorCap = 10;

/// Portable PRNG: std::mt19937_64 (its output sequence is fixed by the
/// standard) plus hand-rolled uniform, integer and Box-Muller normal draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return uniform() < p; }
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

/// Union of boolean adjacency-matrix powers 1..|V| applied to the indicator
/// of `s`.  Throws ConfigError above kBruteOrbitCap nodes.
NodeSet brute_orbit(const CausalGraph& g, const NodeSet& s);

/// Enumerates every non-empty subset and keeps the maximal ones that are
/// invariant, loops, and equal to the orbit intersection of their basin.
/// Throws ConfigError above kBruteAttractorCap nodes.
std::vector<NodeSet> brute_attractors(const CausalGraph& g);

/// Each ordered pair (self-loops included) is an edge with probability `density`.
CausalGraph random_digraph(std::size_t num_nodes, double density, Rng& rng);

/// Graph whose adjacency matrix is the bit pattern `code` (bit i*n + j is i -> j).
CausalGraph graph_from_code(std::size_t num_nodes, std::uint64_t code);

/// Catalog `v1`..`vn`, or the built-in accommodation catalog when n == 14.
VariableCatalog synthetic_catalog(std::size_t num_variables);

struct PlantedModel {
  CausalGraph graph;          // planted causes
  std::vector<double> base;   // level per variable
  double noise_scale = 0.05;  // innovation sd of variables with parents, relative to base
  double coupling = 0.9;
  double persistence = 0.8;   // AR(1) coefficient of every innovation process
  double driver_scale = 0.1;  // innovation sd of parentless variables
  std::uint64_t seed = 0;

  /// Throws ConfigError unless 0 <= noise_scale < coupling < 1,
  /// 0 <= persistence < 1, driver_scale > 0 and bases are positive.
  void check() const;
};

/// Random partition of the variables into groups of the given sizes; every
/// group is planted as a mutually coupled clique (both directions).
PlantedModel planted_groups(std::span<const std::size_t> group_sizes, std::uint64_t seed,
                            double coupling = 0.9, double noise_scale = 0.05);

/// Deviation from base follows
///   d_v(t) = coupling * mean_{p parent of v} d_p(t-1) + e_v(t),
///   e_v(t) = persistence * e_v(t-1) + noise_scale * z
/// for variables with parents; a parentless variable is its own persistent
/// driver, d_v(t) = persistence * d_v(t-1) + driver_scale * z.  The emitted
/// value is base_v * (1 + d_v(t)), floored at 0.  A burn-in is
/// discarded; periods start at 2006-01.  Throws ConfigError for periods < 24.
TimeSeriesTable synth_series(const PlantedModel& model, std::size_t periods);

}  // namespace causorbit::oracle
