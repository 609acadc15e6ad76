#include <cstdio>
#include <string>

#include "causorbit/errors.hpp"
#include "causorbit/oracle.hpp"
#include "causorbit/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace causorbit;
using nlohmann::json;

namespace {

CausalGraph g3() { return CausalGraph(VariableCatalog({"a", "b", "c"}), {{0, 1}, {1, 2}, {2, 1}}); }

std::string fmt_six(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("json report for the three-node graph") {
  const auto r = analyze_graph(g3());
  const auto text = to_json(r);
  CHECK(text == to_json(analyze_graph(g3())));

  const auto doc = json::parse(text);
  const std::vector<std::string> keys{"config", "nodes", "correlations", "pairs", "edges", "orbits",
                                      "weak_components", "invariant_blocks", "sinks", "attractors", "warnings"};
  std::vector<std::string> actual;
  for (auto it = doc.begin(); it != doc.end(); ++it) actual.push_back(it.key());
  std::vector<std::string> sorted_keys = keys;
  std::ranges::sort(sorted_keys);
  CHECK(actual == sorted_keys);  // nlohmann::json sorts on parse; emitted order is checked below

  CHECK(text.find("\"config\"") < text.find("\"correlations\""));
  CHECK(text.find("\"edges\"") < text.find("\"orbits\""));
  CHECK(text.find("\"attractors\"") < text.find("\"warnings\""));

  REQUIRE(doc["attractors"].size() == 1);
  CHECK(doc["attractors"][0]["attractor"] == json::array({2, 3}));
  CHECK(doc["attractors"][0]["basin"] == json::array({1, 2, 3}));
  CHECK(doc["attractors"][0]["witness"] == json::array({2, 3}));
  CHECK(doc["attractors"][0]["campaign_target"] == json::array({1}));
  CHECK(doc["correlations"].is_null());
  CHECK(doc["edges"].size() == 3);
  CHECK(doc["edges"][0]["p_given"].is_null());
  CHECK(doc["orbits"][0]["orbit"] == json::array({2, 3}));
  CHECK(doc["orbits"][1]["iterates"] == json::array({json::array({3}), json::array({2})}));
  CHECK(doc["config"]["threshold"] == 0.7);
}

TEST_CASE("json report with no attractors") {
  const auto text = to_json(analyze_graph(CausalGraph(oracle::synthetic_catalog(3), {{0, 1}})));
  CHECK(text.find("\"attractors\": []") != std::string::npos);
}

TEST_CASE("json numbers carry six significant digits") {
  const auto model = oracle::planted_groups(std::vector<std::size_t>{3, 3, 2, 2, 2, 1, 1}, 2);
  const auto report = analyze_series(oracle::synth_series(model, 144), {});
  const auto doc = json::parse(to_json(report));
  for (const auto& row : doc["correlations"]["matrix"]) {
    for (const auto& v : row) {
      if (v.is_null()) continue;
      const double x = v.get<double>();
      CHECK(x == std::stod(fmt_six(x)));
    }
  }
}

TEST_CASE("dot export") {
  const auto g = g3();
  const auto dot = to_dot(g, find_attractors(g));
  CHECK(dot.starts_with("digraph"));
  CHECK(count(dot, "[label=") == 3);
  CHECK(count(dot, " -> ") == 3);
  CHECK(count(dot, "role=\"attractor\"") == 2);
  CHECK(count(dot, "role=\"basin\"") == 1);
  CHECK(dot.find("2 [label=\"b\", role=\"attractor\"") != std::string::npos);

  const auto bare = to_dot(CausalGraph(oracle::synthetic_catalog(2), {}));
  CHECK(count(bare, "[label=") == 2);
  CHECK(count(bare, "->") == 0);
  CHECK(bare.ends_with("}\n"));

  const auto quoted = CausalGraph(VariableCatalog({"say \"hi\"", "back\\slash"}), {{0, 1}});
  const auto back = graph_from_dot(to_dot(quoted));
  CHECK(back.catalog() == quoted.catalog());
  CHECK(back.edges() == quoted.edges());
}

TEST_CASE("dot output parses back to the same graph") {
  oracle::Rng rng(8);
  for (int round = 0; round < 100; ++round) {
    const auto g = oracle::random_digraph(1 + rng.below(15), rng.uniform(0, 0.5), rng);
    const auto back = graph_from_dot(to_dot(g, find_attractors(g)));
    CHECK(back.catalog() == g.catalog());
    CHECK(back.edges() == g.edges());
  }
  CHECK_THROWS_AS(graph_from_dot("digraph x {\n  what is this\n}\n"), ParseError);
}

TEST_CASE("summary text") {
  const auto g3_text = summary_text(analyze_graph(g3()));
  CHECK(g3_text.find("campaign targets (basin outside the attractor): a (1)") != std::string::npos);

  const auto empty = summary_text(analyze_graph(CausalGraph(oracle::synthetic_catalog(3), {})));
  CHECK(empty.find("No attractors found.") != std::string::npos);
}

TEST_CASE("campaign target equals basin minus attractor") {
  oracle::Rng rng(12);
  for (int round = 0; round < 100; ++round) {
    const auto g = oracle::random_digraph(1 + rng.below(12), rng.uniform(0.05, 0.4), rng);
    const auto r = analyze_graph(g);
    for (const auto& f : r.attractors) {
      CHECK(f.campaign_target == (f.finding.basin - f.finding.attractor));
      CHECK(f.finding.witness == f.finding.attractor);
    }
  }
}

TEST_CASE("matrix csv") {
  const auto catalog = VariableCatalog({"p", "q"});
  const auto identity = matrix_csv(std::vector<NodeSet>{NodeSet(2, {0}), NodeSet(2, {1})}, catalog);
  CHECK(identity == "variable,p,q\np,1,0\nq,0,1\n");

  const auto reach = matrix_csv(reachability_matrix(g3()), g3().catalog());
  CHECK(reach.find("\na,0,1,1\n") != std::string::npos);

  const auto parsed = parse_matrix_csv(reach);
  CHECK(parsed.names == std::vector<std::string>{"a", "b", "c"});
  CHECK(parsed.cells[0] == std::vector<std::optional<double>>{0.0, 1.0, 1.0});

  CHECK_THROWS_AS(matrix_csv(std::vector<NodeSet>{NodeSet(2, {0})}, catalog), DomainError);
  CHECK_THROWS_AS(matrix_csv(std::vector<NodeSet>{NodeSet(3), NodeSet(3)}, catalog), DomainError);

  CorrelationMatrix m(VariableCatalog({"x, y", "z"}));
  m.set(0, 0, 1.0);
  m.set(0, 1, -0.123456789);
  const auto text = matrix_csv(m);
  const auto back = parse_matrix_csv(text);
  CHECK(back.names == std::vector<std::string>{"x, y", "z"});
  CHECK(back.cells[0][0] == 1.0);
  CHECK(back.cells[0][1] == -0.123456789);
  CHECK_FALSE(back.cells[1][1]);
}
