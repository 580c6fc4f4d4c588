#include "splitdh/session.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "splitdh/edge_dynamic.hpp"

namespace splitdh {

namespace {

const char* const kClasses[] = {"dh", "cograph", "3lp"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::vector<Vertex> ids_in(const SplitForest& f, const std::vector<std::string>& names) {
  std::vector<Vertex> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(*f.find(n));
  return out;
}

Graph compact(const Graph& g) { return g.induced(g.vertices()); }

bool class_holds(const SplitForest& f, const std::string& cls) {
  for (ComponentId c : f.components()) {
    if (cls == "cograph" && !is_cograph_tree(f, c)) return false;
    if (cls == "3lp" && !is_3lp_tree(f, c)) return false;
  }
  return true;
}

}  // namespace

bool is_class_name(const std::string& cls) {
  return std::find(std::begin(kClasses), std::end(kClasses), cls) != std::end(kClasses);
}

// ---- script parsing ---------------------------------------------------------------------------

std::vector<ScriptCommand> parse_script(std::istream& in) {
  std::vector<ScriptCommand> out;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    ScriptCommand cmd;
    cmd.line = lineno;
    cmd.text = line;
    const auto colon = line.find(':');
    const auto head = tokens(line.substr(0, colon));
    const std::string& verb = head.front();
    auto arity = [&](std::size_t n) {
      if (head.size() != n + 1)
        throw ScriptError(lineno, "'" + verb + "' takes " + std::to_string(n) + " argument(s)");
    };
    if (verb != "addv" && colon != std::string::npos) throw ScriptError(lineno, "unexpected ':'");
    if (verb == "addv") {
      if (colon == std::string::npos) throw ScriptError(lineno, "addv needs ':' before the neighbours");
      arity(1);
      cmd.op = ScriptOp::AddVertex;
      cmd.x = head[1];
      cmd.neighbors = tokens(line.substr(colon + 1));
      std::vector<std::string> sorted = cmd.neighbors;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ScriptError(lineno, "repeated neighbour");
      if (std::binary_search(sorted.begin(), sorted.end(), cmd.x))
        throw ScriptError(lineno, "vertex listed as its own neighbour");
    } else if (verb == "delv") {
      arity(1);
      cmd.op = ScriptOp::DeleteVertex;
      cmd.x = head[1];
    } else if (verb == "adde" || verb == "dele") {
      arity(2);
      cmd.op = verb == "adde" ? ScriptOp::AddEdge : ScriptOp::DeleteEdge;
      cmd.x = head[1];
      cmd.y = head[2];
      if (cmd.x == cmd.y) throw ScriptError(lineno, "self-loop");
    } else if (verb == "expect") {
      arity(2);
      cmd.op = ScriptOp::Expect;
      cmd.cls = head[1];
      if (!is_class_name(cmd.cls)) throw ScriptError(lineno, "unknown class '" + cmd.cls + "'");
      if (head[2] != "yes" && head[2] != "no") throw ScriptError(lineno, "expected 'yes' or 'no'");
      cmd.expect_yes = head[2] == "yes";
    } else if (verb == "rebuild") {
      arity(0);
      cmd.op = ScriptOp::Rebuild;
    } else {
      throw ScriptError(lineno, "unknown command '" + verb + "'");
    }
    out.push_back(std::move(cmd));
  }
  return out;
}

std::vector<ScriptCommand> parse_script_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_script(in);
}

// ---- tree text --------------------------------------------------------------------------------

Graph graph_from_tree_text(std::istream& in) {
  struct Node {
    char kind = 'L';
    int parent = -1;
    int centre = -1;
    std::string name;
  };
  std::map<int, Node> nodes;
  std::vector<int> leaves;
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    const auto t = tokens(raw);
    if (t.empty() || t[0] == "component") continue;
    Node n;
    int id = 0;
    try {
      id = std::stoi(t.at(1));
      if (t[0] == "leaf") {
        n.name = t.at(2);
        n.parent = std::stoi(t.at(4));
        leaves.push_back(id);
      } else if (t[0] == "node") {
        n.kind = t.at(2) == "clique" ? 'K' : t.at(2) == "star" ? 'S' : '?';
        if (n.kind == '?') fail("unknown node kind '" + t[2] + "'");
        std::size_t i = 5;
        if (n.kind == 'S') {
          n.centre = std::stoi(t.at(6));
          i = 7;
        }
        n.parent = std::stoi(t.at(i + 1));
      } else {
        fail("unknown record '" + t[0] + "'");
      }
    } catch (const std::logic_error&) {
      fail("malformed record");
    }
    if (!nodes.emplace(id, n).second) fail("repeated node id");
  }
  std::map<int, std::vector<int>> adj;
  for (const auto& [id, n] : nodes)
    if (n.parent >= 0) {
      if (!nodes.count(n.parent)) throw std::runtime_error("unknown parent " + std::to_string(n.parent));
      adj[id].push_back(n.parent);
      adj[n.parent].push_back(id);
    }
  Graph g;
  for (int l : leaves) g.add_vertex(nodes[l].name);
  for (int l : leaves) {
    // Depth-first walk from l, continuing only through accessible markers.
    std::function<void(int, int)> walk = [&](int u, int from) {
      for (int w : adj[u]) {
        if (w == from) continue;
        const Node& nu = nodes[u];
        if (nu.kind == 'S' && nu.centre != from && nu.centre != w) continue;
        if (nodes[w].kind == 'L') {
          const Vertex a = g.id(nodes[l].name), b = g.id(nodes[w].name);
          if (a < b) g.add_edge(a, b);
        } else {
          walk(w, u);
        }
      }
    };
    for (int w : adj[l]) {
      if (nodes[w].kind == 'L') {
        const Vertex a = g.id(nodes[l].name), b = g.id(nodes[w].name);
        if (a < b) g.add_edge(a, b);
      } else {
        walk(w, l);
      }
    }
  }
  return g;
}

Graph load_graph_or_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string first;
  in >> first;
  in.clear();
  in.seekg(0);
  return first == "component" ? graph_from_tree_text(in) : read_graph(in);
}

// ---- reports ----------------------------------------------------------------------------------

const ClassVerdict* StepReport::verdict(const std::string& cls) const {
  for (const auto& v : verdicts)
    if (v.cls == cls) return &v;
  return nullptr;
}

int RunReport::failures() const {
  int n = 0;
  for (const auto& s : steps) n += static_cast<int>(s.failures.size());
  return n;
}

void write_report(std::ostream& out, const RunReport& report, bool stats) {
  for (const auto& s : report.steps) {
    out << "line " << s.line << ": " << s.command;
    for (const auto& v : s.verdicts) {
      out << "  " << v.cls << '=';
      if (!v.in_class) out << "out-of-class";
      else out << (v.accept ? "yes" : "no");
      if (v.oracle) out << "(oracle " << (*v.oracle ? "yes" : "no") << ')';
      if (stats) out << " touched=" << v.touched << " marked=" << v.marked;
      if (!v.detail.empty()) out << " [" << v.detail << ']';
    }
    out << '\n';
    for (const auto& f : s.failures) out << "  FAIL " << f << '\n';
  }
  out << (report.ok() ? "ok" : "FAILED") << ": " << report.steps.size() << " step(s), " << report.failures()
      << " failure(s)\n";
}

// ---- session ----------------------------------------------------------------------------------

Session::Session(const Graph& g, std::vector<std::string> classes, bool oracle)
    : oracle_(oracle), shadow_(g) {
  classes_.push_back("dh");
  for (const auto& c : classes) {
    if (!is_class_name(c)) throw std::invalid_argument("unknown class '" + c + "'");
    if (std::find(classes_.begin(), classes_.end(), c) == classes_.end()) classes_.push_back(c);
  }
  Vertex failed = -1;
  auto f = build_forest(compact(g), &failed);
  if (!f) throw std::invalid_argument("initial graph is not distance hereditary");
  dh_ = std::move(*f);
  for (const auto& c : classes_)
    if (c != "dh") {
      layers_.push_back(Layer{c, std::nullopt, {}});
      init_layer(layers_.back());
    }
}

void Session::init_layer(Layer& layer) {
  layer.forest = dh_;
  layer.roots.clear();
  if (!class_holds(*layer.forest, layer.cls)) {
    layer.forest.reset();
    return;
  }
  if (layer.cls == "cograph")
    for (ComponentId c : layer.forest->components()) layer.roots[c] = *is_cograph_tree(*layer.forest, c);
}

void Session::rebuild() {
  auto f = build_forest(compact(shadow_));
  dh_ = std::move(*f);
  for (auto& layer : layers_) init_layer(layer);
}

bool Session::in_class(const std::string& cls) const {
  if (cls == "dh") return true;
  for (const auto& l : layers_)
    if (l.cls == cls) return l.forest.has_value();
  return false;
}

std::optional<TreeRoot> Session::root_for(Layer& layer, std::optional<Vertex> v) {
  if (!v) return std::nullopt;
  auto it = layer.roots.find(layer.forest->component_of(*v));
  if (it == layer.roots.end()) return std::nullopt;
  return it->second;
}

void Session::refresh_roots(Layer& layer, const std::vector<ComponentId>& fresh) {
  const SplitForest& f = *layer.forest;
  const auto live = f.components();
  for (auto it = layer.roots.begin(); it != layer.roots.end();)
    it = std::binary_search(live.begin(), live.end(), it->first) ? std::next(it) : layer.roots.erase(it);
  for (ComponentId c : fresh) layer.roots.erase(c);
  for (ComponentId c : live)
    if (!layer.roots.count(c)) {
      layer.roots[c] = *is_cograph_tree(f, c);
      ++stats_.root_recomputations;
    }
}

void Session::check_oracle(const Graph& after, StepReport& rep) const {
  for (auto& v : rep.verdicts) {
    if (!v.in_class) continue;
    v.oracle = in_class_oracle(after, v.cls);
    if (*v.oracle != v.accept)
      rep.failures.push_back(v.cls + " verdict " + (v.accept ? "yes" : "no") + " differs from the oracle");
  }
}

void Session::add_vertex(const ScriptCommand& cmd, StepReport& rep) {
  if (shadow_.find(cmd.x)) {
    rep.failures.push_back("vertex '" + cmd.x + "' already exists");
    return;
  }
  for (const auto& n : cmd.neighbors)
    if (!shadow_.find(n)) {
      rep.failures.push_back("unknown vertex '" + n + "'");
      return;
    }
  Graph after = shadow_;
  const Vertex nx = after.add_vertex(cmd.x);
  for (const auto& n : cmd.neighbors) after.add_edge(nx, after.id(n));

  const InsertResult res = dh_.insert_vertex(cmd.x, ids_in(dh_, cmd.neighbors));
  const bool dh_ok = res.verdict.accept;
  rep.verdicts.push_back(ClassVerdict{"dh", true, dh_ok, std::nullopt, dh_.last_stats().touched,
                                      dh_.last_stats().marked, dh_ok ? "" : res.verdict.reason});
  for (auto& layer : layers_) {
    ClassVerdict v{layer.cls, layer.forest.has_value(), false, std::nullopt, 0, 0, {}};
    if (layer.forest) {
      SplitForest& f = *layer.forest;
      const auto s = ids_in(f, cmd.neighbors);
      ClassInsertResult r;
      if (layer.cls == "cograph") {
        std::optional<Vertex> hit;
        if (!s.empty()) hit = s.front();
        for (Vertex u : s)
          if (f.component_of(u) != f.component_of(s.front())) hit.reset();
        r = cograph_insert_vertex(f, root_for(layer, hit), cmd.x, s);
      } else {
        r = tlp_insert_vertex(f, cmd.x, s);
      }
      v.accept = r.accept;
      v.touched = f.last_stats().touched;
      v.marked = f.last_stats().marked;
      v.detail = r.reason;
      if (r.dh_accept != dh_ok) rep.failures.push_back(layer.cls + " layer disagrees with the DH verdict");
      if (r.accept && layer.cls == "cograph") {
        const ComponentId c = f.component_of(*f.find(cmd.x));
        if (r.root && !r.report.rebuilt) layer.roots[c] = *r.root;
        refresh_roots(layer, r.root && !r.report.rebuilt ? std::vector<ComponentId>{} : std::vector<ComponentId>{c});
        stats_.root_recomputations += r.root_fallback ? 1 : 0;
      }
      if (!r.accept && dh_ok) {
        layer.forest.reset();
        layer.roots.clear();
        v.detail = "leaves the class; tracking downgraded";
      }
    }
    rep.verdicts.push_back(v);
  }
  if (oracle_) check_oracle(after, rep);
  if (dh_ok) shadow_ = std::move(after);
}

void Session::delete_vertex(const ScriptCommand& cmd, StepReport& rep) {
  const auto gx = shadow_.find(cmd.x);
  if (!gx) {
    rep.failures.push_back("unknown vertex '" + cmd.x + "'");
    return;
  }
  Graph after = shadow_;
  after.remove_vertex(*gx);
  dh_.delete_vertex(*dh_.find(cmd.x));
  rep.verdicts.push_back(ClassVerdict{"dh", true, true, std::nullopt, dh_.last_stats().touched, 0, {}});
  for (auto& layer : layers_) {
    ClassVerdict v{layer.cls, layer.forest.has_value(), true, std::nullopt, 0, 0, {}};
    if (layer.forest) {
      SplitForest& f = *layer.forest;
      const Vertex x = *f.find(cmd.x);
      if (layer.cls == "cograph") {
        const auto res = delete_vertex_class(f, x, "cograph", root_for(layer, x));
        for (auto [c, r] : res.roots) layer.roots[c] = r;
        stats_.root_recomputations += res.root_fallback ? 1 : 0;
        refresh_roots(layer, {});
      } else {
        f.delete_vertex(x);
      }
      v.touched = f.last_stats().touched;
    }
    rep.verdicts.push_back(v);
  }
  if (oracle_) check_oracle(after, rep);
  shadow_ = std::move(after);
}

void Session::modify_edge(const ScriptCommand& cmd, StepReport& rep) {
  const auto gx = shadow_.find(cmd.x), gy = shadow_.find(cmd.y);
  if (!gx || !gy) {
    rep.failures.push_back("unknown vertex '" + (gx ? cmd.y : cmd.x) + "'");
    return;
  }
  const EdgeMode mode = cmd.op == ScriptOp::AddEdge ? EdgeMode::Insert : EdgeMode::Delete;
  if (shadow_.has_edge(*gx, *gy) == (mode == EdgeMode::Insert)) {
    rep.failures.push_back(std::string("edge ") + cmd.x + "-" + cmd.y +
                           (mode == EdgeMode::Insert ? " already present" : " absent"));
    return;
  }
  Graph after = shadow_;
  if (mode == EdgeMode::Insert) after.add_edge(*gx, *gy);
  else after.remove_edge(*gx, *gy);

  const Vertex dx = *dh_.find(cmd.x), dy = *dh_.find(cmd.y);
  const EdgeResult res = mode == EdgeMode::Insert ? dh_edge_insert(dh_, dx, dy) : dh_edge_delete(dh_, dx, dy);
  rep.verdicts.push_back(ClassVerdict{"dh", true, res.accept, std::nullopt, dh_.last_stats().touched, 0,
                                      res.word.str() + (res.accept ? "" : "; " + res.reason)});
  for (auto& layer : layers_) {
    ClassVerdict v{layer.cls, layer.forest.has_value(), false, std::nullopt, 0, 0, {}};
    if (layer.forest) {
      SplitForest& f = *layer.forest;
      const Vertex x = *f.find(cmd.x), y = *f.find(cmd.y);
      const EdgeResult r = layer.cls == "cograph" ? cograph_edge_modify(f, root_for(layer, x), x, y, mode)
                                                  : tlp_edge_modify(f, x, y, mode);
      v.accept = r.accept;
      v.touched = f.last_stats().touched;
      v.detail = r.word.str() + (r.accept ? "" : "; " + r.reason);
      if (r.accept && !res.accept) rep.failures.push_back(layer.cls + " accepted a modification DH rejected");
      if (r.accept && layer.cls == "cograph") {
        std::vector<ComponentId> fresh = r.components;
        if (r.root && !r.rebuilt) {
          const ComponentId cx = f.component_of(x);
          layer.roots[cx] = *r.root;
          fresh.erase(std::remove(fresh.begin(), fresh.end(), cx), fresh.end());
        }
        stats_.root_recomputations += r.root_fallback ? 1 : 0;
        refresh_roots(layer, fresh);
      }
      if (!r.accept && res.accept) {
        layer.forest.reset();
        layer.roots.clear();
        v.detail = "leaves the class; tracking downgraded";
      }
    }
    rep.verdicts.push_back(v);
  }
  if (oracle_) check_oracle(after, rep);
  if (res.accept) shadow_ = std::move(after);
}

void Session::check_expect(const ScriptCommand& cmd, StepReport& rep) {
  if (!last_mutation_) {
    rep.failures.push_back("expect without a preceding modification");
    return;
  }
  const ClassVerdict* v = last_mutation_->verdict(cmd.cls);
  if (!v) {
    rep.failures.push_back("class '" + cmd.cls + "' is not tracked");
  } else if (!v->in_class) {
    rep.failures.push_back("class '" + cmd.cls + "' was out-of-class at line " + std::to_string(last_mutation_->line));
  } else if (v->accept != cmd.expect_yes) {
    rep.failures.push_back("expected " + cmd.cls + " " + (cmd.expect_yes ? "yes" : "no") + ", got " +
                           (v->accept ? "yes" : "no"));
  }
}

void Session::record(const StepReport& rep) {
  ++stats_.steps;
  const ClassVerdict* dh = rep.verdict("dh");
  if (!dh) return;
  ++(dh->accept ? stats_.accepted : stats_.rejected);
  stats_.max_touched = std::max(stats_.max_touched, dh->touched);
  stats_.total_touched += dh->touched;
}

StepReport Session::apply(const ScriptCommand& cmd) {
  StepReport rep;
  rep.line = cmd.line;
  rep.command = cmd.text;
  switch (cmd.op) {
    case ScriptOp::AddVertex:
      add_vertex(cmd, rep);
      break;
    case ScriptOp::DeleteVertex:
      delete_vertex(cmd, rep);
      break;
    case ScriptOp::AddEdge:
    case ScriptOp::DeleteEdge:
      modify_edge(cmd, rep);
      break;
    case ScriptOp::Expect:
      check_expect(cmd, rep);
      return rep;
    case ScriptOp::Rebuild:
      rebuild();
      return rep;
  }
  rep.mutation = true;
  last_mutation_ = rep;
  record(rep);
  return rep;
}

RunReport run_script(const Graph& g, const std::vector<ScriptCommand>& script,
                     const std::vector<std::string>& classes, bool oracle) {
  Session s(g, classes, oracle);
  RunReport report;
  for (const auto& cmd : script) report.steps.push_back(s.apply(cmd));
  return report;
}

}  // namespace splitdh
