#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/edge_dynamic.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/modular_bridge.hpp"
#include "splitdh/session.hpp"
#include "splitdh/split_tree.hpp"
#include "splitdh/sweep.hpp"

namespace py = pybind11;
using namespace splitdh;

namespace {

Graph graph_from_pairs(const std::vector<std::pair<std::string, std::string>>& edges,
                       const std::vector<std::string>& isolated) {
  Graph g = Graph::from_edges(edges);
  for (const auto& v : isolated)
    if (!g.find(v)) g.add_vertex(v);
  return g;
}

std::vector<std::string> vertex_names(const Graph& g) {
  std::vector<std::string> out;
  for (Vertex v : g.vertices()) out.push_back(g.name(v));
  return out;
}

std::vector<std::pair<std::string, std::string>> edge_names(const Graph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [u, v] : g.edges()) out.emplace_back(g.name(u), g.name(v));
  return out;
}

Vertex vertex_of(const SplitForest& f, const std::string& name) {
  auto v = f.find(name);
  if (!v || !f.has_vertex(*v)) throw py::key_error("unknown vertex '" + name + "'");
  return *v;
}

bool library_in_class(const Graph& g, const std::string& cls) {
  if (!is_class_name(cls)) throw py::value_error("unknown class '" + cls + "'");
  auto f = build_forest(g.induced(g.vertices()));
  if (!f) return false;
  for (ComponentId c : f->components()) {
    if (cls == "cograph" && !is_cograph_tree(*f, c)) return false;
    if (cls == "3lp" && !is_3lp_tree(*f, c)) return false;
  }
  return true;
}

SplitForest build_tree(const Graph& g) {
  auto f = build_forest(g.induced(g.vertices()));
  if (!f) throw py::value_error("graph is not distance hereditary");
  return std::move(*f);
}

py::dict edge_result(const EdgeResult& r) {
  py::dict d;
  d["accept"] = r.accept;
  d["word"] = r.word.str();
  d["row"] = r.row;
  d["image"] = r.image;
  d["reason"] = r.reason;
  d["disconnected"] = r.disconnected;
  return d;
}

py::dict step_dict(const StepReport& s) {
  py::dict d;
  d["line"] = s.line;
  d["command"] = s.command;
  py::dict verdicts;
  for (const auto& v : s.verdicts) {
    if (!v.in_class) {
      verdicts[py::str(v.cls)] = py::none();
      continue;
    }
    verdicts[py::str(v.cls)] = v.accept;
  }
  d["verdicts"] = verdicts;
  d["failures"] = s.failures;
  return d;
}

EdgeMode mode_of(const std::string& m) {
  if (m == "insert") return EdgeMode::Insert;
  if (m == "delete") return EdgeMode::Delete;
  throw py::value_error("mode must be 'insert' or 'delete'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Split trees of dynamic distance-hereditary graphs";

  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def(py::init(&graph_from_pairs), py::arg("edges"), py::arg("isolated") = std::vector<std::string>{})
      .def("add_vertex", py::overload_cast<const std::string&>(&Graph::add_vertex), py::arg("name"))
      .def("add_edge",
           [](Graph& g, const std::string& a, const std::string& b) {
             if (!g.has_edge(g.id(a), g.id(b))) g.add_edge(g.id(a), g.id(b));
           })
      .def("remove_edge", [](Graph& g, const std::string& a, const std::string& b) { g.remove_edge(g.id(a), g.id(b)); })
      .def("remove_vertex", [](Graph& g, const std::string& a) { g.remove_vertex(g.id(a)); })
      .def("has_edge", [](const Graph& g, const std::string& a, const std::string& b) {
        return g.has_edge(g.id(a), g.id(b));
      })
      .def("neighbors",
           [](const Graph& g, const std::string& a) {
             std::vector<std::string> out;
             for (Vertex u : g.neighbors(g.id(a))) out.push_back(g.name(u));
             return out;
           })
      .def_property_readonly("vertices", &vertex_names)
      .def_property_readonly("edges", &edge_names)
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("same_as", &Graph::same_as)
      .def("__repr__", [](const Graph& g) {
        return "<Graph " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
               " edges>";
      });

  m.def(
      "read_graph",
      [](const std::string& text) {
        std::istringstream in(text);
        return read_graph(in);
      },
      py::arg("text"), "Parse the edge-list text format");
  m.def(
      "write_graph",
      [](const Graph& g) {
        std::ostringstream out;
        write_graph(out, g);
        return out.str();
      },
      py::arg("graph"));

  py::class_<SplitForest>(m, "SplitTree")
      .def(py::init(&build_tree), py::arg("graph"), "Split tree of a distance-hereditary graph")
      .def("graph", &SplitForest::to_graph)
      .def_property_readonly("vertex_count", &SplitForest::vertex_count)
      .def_property_readonly("internal_node_count", &SplitForest::internal_node_count)
      .def("canonical_codes",
           [](const SplitForest& f) {
             std::vector<std::string> out;
             for (ComponentId c : f.components()) out.push_back(canonical_code(f, c));
             return out;
           })
      .def("text",
           [](const SplitForest& f) {
             std::ostringstream out;
             f.write_text(out);
             return out.str();
           })
      .def("dot",
           [](const SplitForest& f) {
             std::ostringstream out;
             f.write_dot(out);
             return out.str();
           })
      .def(
          "insert_vertex",
          [](SplitForest& f, const std::string& name, const std::vector<std::string>& neighbors) {
            if (auto v = f.find(name); v && f.has_vertex(*v)) throw py::value_error("vertex '" + name + "' exists");
            std::vector<Vertex> s;
            for (const auto& n : neighbors) s.push_back(vertex_of(f, n));
            const InsertResult r = f.insert_vertex(name, s);
            return py::make_tuple(r.verdict.accept, r.verdict.reason);
          },
          py::arg("name"), py::arg("neighbors"), "Returns (accepted, reason); the tree is unchanged on rejection")
      .def("delete_vertex", [](SplitForest& f, const std::string& name) { f.delete_vertex(vertex_of(f, name)); })
      .def(
          "insert_edge",
          [](SplitForest& f, const std::string& x, const std::string& y) {
            return edge_result(dh_edge_insert(f, vertex_of(f, x), vertex_of(f, y)));
          },
          py::arg("x"), py::arg("y"))
      .def(
          "delete_edge",
          [](SplitForest& f, const std::string& x, const std::string& y) {
            return edge_result(dh_edge_delete(f, vertex_of(f, x), vertex_of(f, y)));
          },
          py::arg("x"), py::arg("y"))
      .def(
          "path_word",
          [](const SplitForest& f, const std::string& x, const std::string& y) {
            return path_word(f, vertex_of(f, x), vertex_of(f, y)).str();
          },
          py::arg("x"), py::arg("y"))
      .def("check_invariants", &SplitForest::check_invariants);

  m.def("in_class", &library_in_class, py::arg("graph"), py::arg("cls") = "dh",
        "Class membership decided on the split tree: 'dh', 'cograph' or '3lp'");
  m.def(
      "oracle",
      [](const Graph& g, const std::string& cls) {
        if (!is_class_name(cls)) throw py::value_error("unknown class '" + cls + "'");
        return in_class_oracle(g, cls);
      },
      py::arg("graph"), py::arg("cls") = "dh", "Brute-force class membership");
  m.def("isomorphic", &isomorphic_dh, py::arg("g1"), py::arg("g2"),
        "Isomorphism of connected distance-hereditary graphs");
  m.def(
      "forbidden_subwords",
      [](const std::string& mode, int max_len) {
        std::vector<std::string> out;
        for (const Word& w : forbidden_subwords(mode_of(mode), max_len)) out.push_back(word_string(w));
        return out;
      },
      py::arg("mode"), py::arg("max_len") = 6);
  m.def(
      "word_safe", [](const std::string& w, const std::string& mode) { return word_safe(parse_word(w), mode_of(mode)); },
      py::arg("word"), py::arg("mode"));

  py::class_<Session>(m, "Session")
      .def(py::init<const Graph&, std::vector<std::string>, bool>(), py::arg("graph") = Graph(),
           py::arg("classes") = std::vector<std::string>{"dh"}, py::arg("oracle") = false)
      .def(
          "apply",
          [](Session& s, const std::string& line) {
            std::istringstream in(line);
            const auto cmds = parse_script(in);
            py::list out;
            for (const auto& c : cmds) out.append(step_dict(s.apply(c)));
            return out;
          },
          py::arg("script"), "Apply script text; returns one dict per command")
      .def("rebuild", &Session::rebuild)
      .def("in_class", &Session::in_class)
      .def_property_readonly("graph", &Session::graph)
      .def("tree_text", [](const Session& s) {
        std::ostringstream out;
        s.forest().write_text(out);
        return out.str();
      });

  m.def(
      "sweep",
      [](int n_max, int threads) {
        SweepOptions opt;
        opt.n_max = n_max;
        opt.threads = threads;
        py::dict out;
        for (const SweepCheck& c : oracle_sweep(opt).checks)
          out[py::str(c.name)] = py::make_tuple(c.cases, c.divergences, c.witness);
        return out;
      },
      py::arg("n_max"), py::arg("threads") = 1, "Differential checks against the oracles: name -> (cases, divergences, witness)");

  m.def(
      "modular_decomposition", [](const Graph& g) { return md_tree_bruteforce(g).str(); }, py::arg("graph"),
      "Modular decomposition as text, e.g. 'S(a,P(b,c))'");
  m.def(
      "modular_tree", [](const Graph& g) { return md_to_modular_glt(md_tree_bruteforce(g)).named_form(); },
      py::arg("graph"), "Rooted graph-labelled tree built from the modular decomposition");
  m.def(
      "modular_tree_from_split_tree",
      [](const Graph& g) { return splittree_to_modular_glt(glt::split_tree_bruteforce(g)).named_form(); },
      py::arg("graph"), "Rooted graph-labelled tree recovered from the split tree");

  py::register_exception<ScriptError>(m, "ScriptError", PyExc_ValueError);
}
