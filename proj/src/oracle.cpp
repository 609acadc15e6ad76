#include "causorbit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fmt/format.h>

#include "causorbit/errors.hpp"

namespace causorbit::oracle {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

using Mask = std::uint32_t;

struct BitGraph {
  std::size_t n = 0;
  std::vector<Mask> out;  // out[i] bit j <=> i -> j

  explicit BitGraph(const CausalGraph& g) : n(g.num_nodes()), out(g.num_nodes(), 0) {
    for (const auto& [s, t] : g.edges()) out[s] |= Mask{1} << t;
  }

  // Row vector times adjacency matrix, boolean semiring.
  Mask step(Mask v) const {
    Mask next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v >> i & 1u) next |= out[i];
    }
    return next;
  }

  Mask powers_union(Mask v, Mask within) const {
    Mask acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
      v = step(v) & within;
      acc |= v;
    }
    return acc;
  }
};

Mask to_mask(const NodeSet& s) {
  Mask m = 0;
  for (auto x : s.members()) m |= Mask{1} << x;
  return m;
}

NodeSet from_mask(std::size_t n, Mask m) {
  NodeSet s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m >> i & 1u) s.insert(i);
  }
  return s;
}

}  // namespace

NodeSet brute_orbit(const CausalGraph& g, const NodeSet& s) {
  if (g.num_nodes() > kBruteOrbitCap) {
    throw ConfigError(fmt::format("brute_orbit is capped at {} nodes", kBruteOrbitCap));
  }
  const BitGraph bg(g);
  const Mask all = (Mask{1} << g.num_nodes()) - 1;
  return from_mask(g.num_nodes(), bg.powers_union(to_mask(s), all));
}

std::vector<NodeSet> brute_attractors(const CausalGraph& g) {
  const std::size_t n = g.num_nodes();
  if (n > kBruteAttractorCap) {
    throw ConfigError(fmt::format("brute_attractors is capped at {} nodes", kBruteAttractorCap));
  }
  const BitGraph bg(g);
  const Mask all = (Mask{1} << n) - 1;
  std::vector<Mask> reach(n);
  for (std::size_t x = 0; x < n; ++x) reach[x] = bg.powers_union(Mask{1} << x, all);

  std::vector<Mask> qualifying;
  for (Mask s = 1; s <= all; ++s) {
    if ((bg.step(s) & ~s) != 0) continue;  // invariant

    bool loop = true;
    for (std::size_t x = 0; x < n && loop; ++x) {
      if (s >> x & 1u) loop = (s & ~bg.powers_union(Mask{1} << x, s)) == 0;
    }
    if (!loop) continue;

    Mask basin = s;
    for (std::size_t x = 0; x < n; ++x) {
      if ((reach[x] & s) != 0) basin |= Mask{1} << x;
    }
    Mask meet = all;
    for (std::size_t x = 0; x < n; ++x) {
      if (basin >> x & 1u) meet &= reach[x];
    }
    if (meet == s) qualifying.push_back(s);
  }

  std::vector<NodeSet> out;
  for (Mask s : qualifying) {
    bool maximal = true;
    for (Mask o : qualifying) {
      if (o != s && (s & ~o) == 0) maximal = false;
    }
    if (maximal) out.push_back(from_mask(n, s));
  }
  std::ranges::sort(out, {}, [](const NodeSet& x) { return x.front(); });
  return out;
}

VariableCatalog synthetic_catalog(std::size_t num_variables) {
  if (num_variables == 14) return builtin_catalog();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_variables; ++i) names.push_back(fmt::format("v{}", i + 1));
  return VariableCatalog(std::move(names));
}

CausalGraph random_digraph(std::size_t num_nodes, double density, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < num_nodes; ++i) {
    for (std::size_t j = 0; j < num_nodes; ++j) {
      if (rng.chance(density)) edges.emplace_back(i, j);
    }
  }
  return CausalGraph(synthetic_catalog(num_nodes), std::move(edges));
}

CausalGraph graph_from_code(std::size_t num_nodes, std::uint64_t code) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < num_nodes; ++i) {
    for (std::size_t j = 0; j < num_nodes; ++j) {
      if (code >> (i * num_nodes + j) & 1u) edges.emplace_back(i, j);
    }
  }
  return CausalGraph(synthetic_catalog(num_nodes), std::move(edges));
}

void PlantedModel::check() const {
  if (!(noise_scale >= 0)) throw ConfigError("noise scale must be non-negative");
  if (!(driver_scale > 0)) throw ConfigError("driver scale must be positive");
  if (!(coupling > noise_scale)) throw ConfigError("coupling must exceed the noise scale");
  if (!(coupling < 1)) throw ConfigError("coupling must be below 1");
  if (!(persistence >= 0 && persistence < 1)) throw ConfigError("persistence must be in [0, 1)");
  if (base.size() != graph.num_nodes()) throw ConfigError("one base level per variable is required");
  for (double b : base) {
    if (!(b > 0)) throw ConfigError("base levels must be positive");
  }
}

PlantedModel planted_groups(std::span<const std::size_t> group_sizes, std::uint64_t seed,
                            double coupling, double noise_scale) {
  std::size_t n = 0;
  for (auto s : group_sizes) n += s;
  Rng rng(seed);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<Edge> edges;
  std::size_t next = 0;
  for (auto size : group_sizes) {
    for (std::size_t a = next; a < next + size; ++a) {
      for (std::size_t b = next; b < next + size; ++b) {
        if (a != b) edges.emplace_back(order[a], order[b]);
      }
    }
    next += size;
  }

  PlantedModel model;
  model.graph = CausalGraph(synthetic_catalog(n), std::move(edges));
  for (std::size_t i = 0; i < n; ++i) model.base.push_back(rng.uniform(500.0, 5000.0));
  model.coupling = coupling;
  model.noise_scale = noise_scale;
  model.seed = seed;
  model.check();
  return model;
}

TimeSeriesTable synth_series(const PlantedModel& model, std::size_t periods) {
  model.check();
  if (periods < 24) throw ConfigError("synth_series needs at least 24 periods");
  constexpr std::size_t kBurnIn = 60;

  const auto& g = model.graph;
  const std::size_t n = g.num_nodes();
  Rng rng(model.seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<double> dev(n, 0.0), noise(n, 0.0), next(n, 0.0);

  TimeSeriesTable table{g.catalog(), {}, std::vector<std::vector<double>>(n)};
  for (std::size_t t = 0; t < kBurnIn + periods; ++t) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto parents = g.predecessors(v);
      const double z = rng.normal();
      if (parents.empty()) {
        next[v] = model.persistence * dev[v] + model.driver_scale * z;
        continue;
      }
      noise[v] = model.persistence * noise[v] + model.noise_scale * z;
      double drive = 0;
      for (auto p : parents) drive += dev[p];
      next[v] = model.coupling * drive / static_cast<double>(parents.size()) + noise[v];
    }
    dev.swap(next);
    if (t < kBurnIn) continue;
    const std::size_t k = t - kBurnIn;
    table.periods.push_back({2006 + static_cast<int>(k / 12), static_cast<int>(k % 12) + 1});
    for (std::size_t v = 0; v < n; ++v) table.columns[v].push_back(std::max(0.0, model.base[v] * (1.0 + dev[v])));
  }
  return table;
}

}  // namespace causorbit::oracle
