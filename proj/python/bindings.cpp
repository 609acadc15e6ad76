#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "causorbit/cli.hpp"
#include "causorbit/dynamics.hpp"
#include "causorbit/errors.hpp"
#include "causorbit/report.hpp"
#include "causorbit/screening.hpp"
#include "causorbit/table.hpp"

namespace py = pybind11;
using namespace causorbit;

// Node sets cross the boundary as sorted lists of 0-based indices.
namespace {

using Members = std::vector<std::size_t>;

NodeSet to_set(const CausalGraph& g, const Members& members) {
  NodeSet s = g.empty_set();
  for (auto m : members) {
    if (m >= g.num_nodes()) throw py::index_error("node index out of range");
    s.insert(m);
  }
  return s;
}

std::vector<Members> to_lists(const std::vector<NodeSet>& sets) {
  std::vector<Members> out;
  for (const auto& s : sets) out.push_back(s.members());
  return out;
}

ScreeningConfig make_config(double threshold, const std::string& binarize, double margin, bool absolute) {
  const auto rule = parse_binarize_rule(binarize);
  if (!rule) throw ConfigError("unknown binarization rule '" + binarize + "'");
  ScreeningConfig c{threshold, *rule, margin, absolute};
  c.check();
  return c;
}

VariableCatalog catalog_or_builtin(const std::optional<std::vector<std::string>>& names) {
  return names ? VariableCatalog(*names) : builtin_catalog();
}

std::vector<std::vector<std::optional<double>>> to_rows(const CorrelationMatrix& m) {
  std::vector<std::vector<std::optional<double>>> rows(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) rows[i].push_back(m.at(i, j));
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Causal screening of time-series panels and orbit/attractor analysis of directed graphs";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("builtin_catalog", [] { return builtin_catalog().names(); });

  py::class_<TimeSeriesTable>(m, "TimeSeriesTable")
      .def_property_readonly("names", [](const TimeSeriesTable& t) { return t.catalog.names(); })
      .def_property_readonly("periods", [](const TimeSeriesTable& t) {
        std::vector<std::string> out;
        for (const auto& p : t.periods) out.push_back(p.str());
        return out;
      })
      .def_readonly("columns", &TimeSeriesTable::columns)
      .def("to_csv", &write_table_csv);

  m.def(
      "load_table",
      [](const std::string& csv, const std::optional<std::vector<std::string>>& names) {
        return load_table(csv, catalog_or_builtin(names));
      },
      py::arg("csv"), py::arg("names") = py::none());

  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); });
  m.def("correlation_matrix", [](const TimeSeriesTable& t) { return to_rows(correlation_matrix(t)); });
  m.def(
      "select_pairs",
      [](const TimeSeriesTable& t, double threshold, bool absolute) {
        std::vector<std::tuple<std::size_t, std::size_t, double>> out;
        for (const auto& p : select_pairs(correlation_matrix(t), threshold, absolute)) out.emplace_back(p.i, p.j, p.r);
        return out;
      },
      py::arg("table"), py::arg("threshold") = 0.7, py::arg("absolute") = false);
  m.def(
      "binarize",
      [](const TimeSeriesTable& t, const std::string& rule) {
        const auto r = parse_binarize_rule(rule);
        if (!r) throw ConfigError("unknown binarization rule '" + rule + "'");
        return binarize(t, *r).events;
      },
      py::arg("table"), py::arg("rule") = "median");
  m.def("conditioning", [](const std::vector<bool>& a, const std::vector<bool>& b) {
    if (a.size() != b.size()) throw DomainError("event columns differ in length");
    BinaryEventTable ev{VariableCatalog({"a", "b"}), std::vector<YearMonth>(a.size()), {a, b}};
    const auto s = conditioning(ev, 0, 1);
    return py::dict(py::arg("p_given") = s.p_given, py::arg("p_given_not") = s.p_given_not,
                    py::arg("n_a") = s.n_a, py::arg("n_not_a") = s.n_not_a);
  });

  py::class_<CausalGraph>(m, "CausalGraph")
      .def(py::init([](const std::vector<std::string>& names, const std::vector<Edge>& edges) {
             return CausalGraph(VariableCatalog(names), edges);
           }),
           py::arg("names"), py::arg("edges"))
      .def_static(
          "from_edge_list",
          [](const std::string& text, const std::optional<std::vector<std::string>>& names) {
            return parse_edge_list(text, catalog_or_builtin(names));
          },
          py::arg("text"), py::arg("names") = py::none())
      .def_property_readonly("names", [](const CausalGraph& g) { return g.catalog().names(); })
      .def_property_readonly("edges", &CausalGraph::edges)
      .def("__len__", &CausalGraph::num_nodes);

  m.def("image", [](const CausalGraph& g, const Members& s) { return image(g, to_set(g, s)).members(); });
  m.def("orbit", [](const CausalGraph& g, const Members& s) {
    const auto o = orbit(g, to_set(g, s));
    return py::make_tuple(to_lists(o.iterates), o.orbit.members());
  });
  m.def("is_invariant", [](const CausalGraph& g, const Members& s) { return is_invariant(g, to_set(g, s)); });
  m.def("covers", [](const CausalGraph& g, const Members& a, const Members& b) {
    return covers(g, to_set(g, a), to_set(g, b));
  });
  m.def("is_loop", [](const CausalGraph& g, const Members& s) { return is_loop(g, to_set(g, s)); });
  m.def("strongly_connected_components", [](const CausalGraph& g) { return to_lists(strongly_connected_components(g)); });
  m.def("attractors", [](const CausalGraph& g) { return to_lists(attractors(g)); });
  m.def("basin", [](const CausalGraph& g, const Members& t) { return basin(g, to_set(g, t)).members(); });
  m.def("orbit_intersection", [](const CausalGraph& g, const Members& b) {
    return orbit_intersection(g, to_set(g, b)).members();
  });
  m.def("weak_components", [](const CausalGraph& g) { return to_lists(weak_components(g)); });
  m.def("reachability_matrix", [](const CausalGraph& g) { return to_lists(reachability_matrix(g)); });

  m.def(
      "analyze_series",
      [](const std::string& csv, const std::optional<std::vector<std::string>>& names, double threshold,
         const std::string& binarize, double margin, bool absolute) {
        const auto config = make_config(threshold, binarize, margin, absolute);
        return to_json(analyze_series(load_table(csv, catalog_or_builtin(names)), config));
      },
      py::arg("csv"), py::arg("names") = py::none(), py::arg("threshold") = 0.7, py::arg("binarize") = "median",
      py::arg("margin") = 0.0, py::arg("absolute") = false, "Full pipeline; returns the JSON report text.");
  m.def("analyze_graph", [](const CausalGraph& g) { return to_json(analyze_graph(g)); },
        "Dynamics-only JSON report for a graph.");
  m.def("summary_text", [](const CausalGraph& g) { return summary_text(analyze_graph(g)); });
  m.def("to_dot", [](const CausalGraph& g) { return to_dot(g, find_attractors(g)); });

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "causorbit");
        std::ostringstream out, err;
        const int status = cli::run_cli(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      "Runs the command-line interface in-process; returns (status, stdout, stderr).");
}
