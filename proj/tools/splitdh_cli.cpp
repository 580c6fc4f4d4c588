// Command-line front end: class checks, edit-script replay, isomorphism,
// split tree export and the oracle sweep.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/session.hpp"
#include "splitdh/split_tree.hpp"
#include "splitdh/sweep.hpp"

using namespace splitdh;

namespace {

constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kNotDH = 3;

Graph load(const std::string& path) { return path == "-" ? Graph() : load_graph_or_tree(path); }

std::optional<bool> library_verdict(const Graph& g, const std::string& cls) {
  auto f = build_forest(g.induced(g.vertices()));
  if (!f) return false;
  for (ComponentId c : f->components()) {
    if (cls == "cograph" && !is_cograph_tree(*f, c)) return false;
    if (cls == "3lp" && !is_3lp_tree(*f, c)) return false;
  }
  return true;
}

int run_check(const std::string& path, const std::string& cls, const std::string& expect, bool oracle) {
  const Graph g = load(path);
  const bool verdict = *library_verdict(g, cls);
  std::cout << cls << ' ' << (verdict ? "yes" : "no") << '\n';
  int status = 0;
  if (oracle) {
    const bool o = in_class_oracle(g, cls);
    std::cout << "oracle " << (o ? "yes" : "no") << '\n';
    if (o != verdict) status = kMismatch;
  }
  if (cls == "dh" && !verdict && g.vertex_count() <= kOracleCap)
    if (auto w = find_forbidden_dh_subgraph(g)) {
      std::cout << "witness " << w->kind << ':';
      for (Vertex v : w->vertices) std::cout << ' ' << g.name(v);
      std::cout << '\n';
    }
  if (!expect.empty() && (expect == "yes") != verdict) status = kMismatch;
  return status;
}

void export_forest(const SplitForest& f, const std::string& format, const std::string& out_path) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
    out = &file;
  }
  if (format == "dot") f.write_dot(*out);
  else f.write_text(*out);
}

int run_apply(const std::string& graph_path, const std::string& script_path, const std::vector<std::string>& classes,
              bool oracle, bool stats, const std::string& format, const std::string& out_path) {
  const auto script = parse_script_file(script_path);
  Session session(load(graph_path), classes, oracle);
  RunReport report;
  for (const auto& cmd : script) report.steps.push_back(session.apply(cmd));
  write_report(std::cout, report, stats);
  if (stats) {
    const SessionStats& s = session.stats();
    std::cout << "stats: steps=" << s.steps << " accepted=" << s.accepted << " rejected=" << s.rejected
              << " max_touched=" << s.max_touched << " total_touched=" << s.total_touched
              << " root_recomputations=" << s.root_recomputations << '\n';
  }
  if (!format.empty()) export_forest(session.forest(), format, out_path);
  return report.ok() ? 0 : kMismatch;
}

int run_iso(const std::string& a, const std::string& b) {
  const Graph g1 = load(a), g2 = load(b);
  for (const auto& [g, path] : {std::pair<const Graph&, const std::string&>{g1, a}, {g2, b}}) {
    if (g.vertex_count() == 0 || !is_connected(g)) {
      std::cout << "not connected: " << path << '\n';
      return kNotDH;
    }
    if (!build_incremental(g)) {
      std::cout << "not distance hereditary: " << path << '\n';
      return kNotDH;
    }
  }
  std::cout << (isomorphic_dh(g1, g2) ? "yes" : "no") << '\n';
  return 0;
}

int run_export(const std::string& path, const std::string& format, const std::string& out_path) {
  const Graph g = load(path);
  Vertex failed = -1;
  auto f = build_forest(g.induced(g.vertices()), &failed);
  if (!f) {
    std::cerr << "not distance hereditary: " << path << '\n';
    return kNotDH;
  }
  export_forest(*f, format, out_path);
  return 0;
}

int run_sweep(const SweepOptions& opt) {
  const SweepResult r = oracle_sweep(opt);
  write_sweep(std::cout, r);
  std::cout << (r.ok() ? "ok" : "FAILED") << '\n';
  return r.ok() ? 0 : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split trees of dynamic distance-hereditary graphs"};
  app.require_subcommand(1);
  const std::vector<std::string> class_names{"dh", "cograph", "3lp"};

  std::string graph_path, other_path, script_path, cls = "dh", expect, format, out_path;
  std::vector<std::string> classes{"dh"};
  bool oracle = false, stats = false;
  SweepOptions sweep;

  auto* check = app.add_subcommand("check", "Decide whether a graph belongs to a class");
  check->add_option("--class", cls, "dh, cograph or 3lp")->check(CLI::IsMember(class_names));
  check->add_option("--expect", expect, "Expected verdict; exit 1 on mismatch")->check(CLI::IsMember({"yes", "no"}));
  check->add_flag("--oracle", oracle, "Also run the brute-force oracle");
  check->add_option("graph", graph_path, "Graph file or tree dump")->required();

  auto* apply = app.add_subcommand("apply", "Replay an edit script with per-step verdicts");
  apply->add_option("graph", graph_path, "Initial graph file, or '-' for the empty graph")->required();
  apply->add_option("script", script_path, "Edit script")->required();
  apply->add_option("--classes", classes, "Classes to track")->delimiter(',')->check(CLI::IsMember(class_names));
  apply->add_flag("--oracle", oracle, "Check every verdict against the brute-force oracles");
  apply->add_flag("--stats", stats, "Print touched-node counters");
  apply->add_option("--export", format, "Write the final split tree (text or dot)")
      ->check(CLI::IsMember({"text", "dot"}));
  apply->add_option("-o,--output", out_path, "Export destination (default stdout)");

  auto* iso = app.add_subcommand("iso", "Isomorphism of two connected distance-hereditary graphs");
  iso->add_option("g1", graph_path, "First graph")->required();
  iso->add_option("g2", other_path, "Second graph")->required();

  auto* exp = app.add_subcommand("export", "Print the split tree of a graph");
  exp->add_option("graph", graph_path, "Graph file")->required();
  exp->add_option("--format", format, "text or dot")->required()->check(CLI::IsMember({"text", "dot"}));
  exp->add_option("-o,--output", out_path, "Destination (default stdout)");

  auto* sw = app.add_subcommand("sweep", "Differential checks against the oracles on all small graphs");
  sw->add_option("--n", sweep.n_max, "Largest graph size")->required()->check(CLI::Range(1, kOracleCap));
  sw->add_option("--classes", sweep.classes, "Classes for the dynamic checks")
      ->delimiter(',')
      ->check(CLI::IsMember(class_names));
  sw->add_option("--samples", sweep.samples, "Random graphs per size above seven vertices");
  sw->add_option("--seed", sweep.seed, "Sampling seed");
  sw->add_option("--threads", sweep.threads, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_option("--orders", sweep.cunningham_orders, "Random split orders per graph");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(graph_path, cls, expect, oracle);
    if (*apply) return run_apply(graph_path, script_path, classes, oracle, stats, format, out_path);
    if (*iso) return run_iso(graph_path, other_path);
    if (*exp) return run_export(graph_path, format, out_path);
    if (*sw) return run_sweep(sweep);
  } catch (const ScriptError& e) {
    std::cerr << script_path << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
