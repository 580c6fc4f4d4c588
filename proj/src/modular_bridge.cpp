#include "splitdh/modular_bridge.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace splitdh {

const char* to_string(MDKind k) {
  switch (k) {
    case MDKind::Leaf: return "leaf";
    case MDKind::Series: return "series";
    case MDKind::Parallel: return "parallel";
    case MDKind::Prime: return "prime";
  }
  return "?";
}

namespace {

using Mask = std::uint32_t;

struct Bits {
  std::vector<Vertex> verts;
  std::vector<Mask> adj;

  explicit Bits(const Graph& g) : verts(g.vertices()) {
    std::map<Vertex, int> idx;
    for (std::size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
    adj.assign(verts.size(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (Vertex w : g.neighbors(verts[i])) adj[i] |= Mask{1} << idx[w];
  }
  int n() const { return static_cast<int>(verts.size()); }

  bool is_module(Mask m) const {
    for (int i = 0; i < n(); ++i) {
      if ((m >> i) & 1U) continue;
      const Mask hit = adj[i] & m;
      if (hit != 0 && hit != m) return false;
    }
    return true;
  }

  // Connectivity of the subgraph induced by m, in g or in its complement.
  bool connected(Mask m, bool complement) const {
    if (m == 0) return true;
    Mask seen = m & (~m + 1), frontier = seen;
    while (frontier) {
      const int i = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const Mask nb = (complement ? ~adj[i] & ~(Mask{1} << i) : adj[i]) & m & ~seen;
      seen |= nb;
      frontier |= nb;
    }
    return seen == m;
  }
};

// Module masks of g other than the empty set.
std::vector<Mask> all_modules(const Bits& b) {
  std::vector<Mask> out;
  const Mask full = b.n() == 32 ? ~Mask{0} : (Mask{1} << b.n()) - 1;
  for (Mask m = 1; m <= full && m != 0; ++m)
    if (b.is_module(m)) out.push_back(m);
  return out;
}

bool overlap(Mask a, Mask c) {
  const Mask i = a & c;
  return i != 0 && i != a && i != c;
}

bool is_universal(const glt::GraphLabelledTree& t, glt::NodeId v, glt::MarkerId m) {
  const glt::Node& n = t.node(v);
  auto it = n.label.find(m);
  return it != n.label.end() && it->second.size() + 1 == n.markers.size();
}

bool m_degenerate(const Graph& g) {
  const long n = g.vertex_count();
  return g.edge_count() == 0 || g.edge_count() == n * (n - 1) / 2;
}

// Neighbour of v on the tree path toward x, for every node v != x.
std::map<glt::NodeId, glt::NodeId> hops_toward(const glt::GraphLabelledTree& t, glt::NodeId x) {
  std::map<glt::NodeId, glt::NodeId> hop;
  std::deque<glt::NodeId> queue{x};
  hop[x] = -1;
  while (!queue.empty()) {
    const glt::NodeId u = queue.front();
    queue.pop_front();
    for (glt::NodeId w : t.neighbors(u))
      if (!hop.count(w)) {
        hop[w] = u;
        queue.push_back(w);
      }
  }
  return hop;
}

std::string leaf_set(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::string s = "{";
  for (const auto& n : names) s += n + ",";
  return s + "}";
}

}  // namespace

MDTree md_tree_bruteforce(const Graph& g);

namespace {

// Moves every non-trivial strong module of v's label into a node of its own,
// smallest modules first, so that v keeps only the root quotient.  Modules
// whose complement is a single marker stay, as they would leave v binary.
void expand_modules(glt::GraphLabelledTree& t, glt::NodeId v) {
  std::vector<glt::MarkerId> order;
  const Graph label = t.label_graph(v, &order);
  const MDTree md = md_tree_bruteforce(label);
  std::function<glt::MarkerId(int)> rec = [&](int u) -> glt::MarkerId {
    const MDNode& n = md.nodes[u];
    if (n.kind == MDKind::Leaf) return order[n.vertices.front()];
    std::set<glt::MarkerId> inside;
    for (int c : n.children) inside.insert(rec(c));
    if (u == md.root()) return -1;
    std::set<glt::MarkerId> rest;
    for (glt::MarkerId m : t.node(v).markers)
      if (!inside.count(m)) rest.insert(m);
    if (rest.size() < 2) return -1;
    const glt::NodeId moved = t.node_split(v, rest).second;
    return t.marker_toward(v, moved);
  };
  rec(md.root());
}

}  // namespace

// ---- modular decomposition -----------------------------------------------------------

std::string MDTree::str() const {
  std::function<std::string(int)> rec = [&](int u) -> std::string {
    const MDNode& n = nodes[u];
    if (n.kind == MDKind::Leaf) return n.name;
    std::vector<std::string> parts;
    for (int c : n.children) parts.push_back(rec(c));
    std::vector<int> order(parts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return parts[a] < parts[b]; });
    std::string s = n.kind == MDKind::Series ? "S(" : n.kind == MDKind::Parallel ? "P(" : "R(";
    for (std::size_t i = 0; i < order.size(); ++i) s += (i ? "," : "") + parts[order[i]];
    if (n.kind == MDKind::Prime) {
      std::vector<int> pos(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
      std::vector<std::string> edges;
      for (auto [a, b] : n.quotient.edges())
        edges.push_back(std::to_string(std::min(pos[a], pos[b])) + "-" + std::to_string(std::max(pos[a], pos[b])));
      std::sort(edges.begin(), edges.end());
      s += "|";
      for (std::size_t i = 0; i < edges.size(); ++i) s += (i ? " " : "") + edges[i];
    }
    return s + ")";
  };
  return nodes.empty() ? std::string() : rec(0);
}

MDTree md_tree_bruteforce(const Graph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("modular decomposition of an empty graph");
  if (g.vertex_count() > kOracleCap) throw std::invalid_argument("graph exceeds the oracle cap");
  const Bits b(g);
  const std::vector<Mask> modules = all_modules(b);
  std::vector<Mask> strong;
  for (Mask m : modules)
    if (std::none_of(modules.begin(), modules.end(), [&](Mask o) { return overlap(m, o); })) strong.push_back(m);

  MDTree md;
  std::function<int(Mask)> build = [&](Mask m) -> int {
    const int id = static_cast<int>(md.nodes.size());
    md.nodes.emplace_back();
    std::vector<Vertex> vs;
    for (Mask r = m; r; r &= r - 1) vs.push_back(b.verts[std::countr_zero(r)]);
    md.nodes[id].vertices = vs;
    if (std::popcount(m) == 1) {
      md.nodes[id].name = g.name(vs.front());
      return id;
    }
    std::vector<Mask> kids;
    for (Mask s : strong) {
      if (s == m || (s & m) != s) continue;
      const bool maximal = std::none_of(strong.begin(), strong.end(), [&](Mask o) {
        return o != m && o != s && (o & m) == o && (o & s) == s;
      });
      if (maximal) kids.push_back(s);
    }
    std::sort(kids.begin(), kids.end(), [](Mask x, Mask y) { return std::countr_zero(x) < std::countr_zero(y); });
    const MDKind kind = !b.connected(m, false) ? MDKind::Parallel
                        : !b.connected(m, true) ? MDKind::Series
                                                : MDKind::Prime;
    Graph q = Graph::with_vertices(static_cast<int>(kids.size()));
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j)
        if (b.adj[std::countr_zero(kids[i])] & kids[j]) q.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    std::vector<int> children;
    for (Mask k : kids) children.push_back(build(k));
    md.nodes[id].kind = kind;
    md.nodes[id].children = std::move(children);
    md.nodes[id].quotient = std::move(q);
    return id;
  };
  const Mask full = (Mask{1} << b.n()) - 1;
  build(full);
  return md;
}

bool is_m_prime(const Graph& g) {
  if (g.vertex_count() < 3) return false;
  const Bits b(g);
  for (Mask m : all_modules(b))
    if (std::popcount(m) > 1 && std::popcount(m) < b.n()) return false;
  return true;
}

// ---- modular graph-labelled trees ----------------------------------------------------

std::string ModularGLT::named_form() const {
  std::string root = "#root:";
  if (root_is_edge()) {
    std::vector<std::string> sides{leaf_set(tree.side_leaves(root_a, root_b)),
                                   leaf_set(tree.side_leaves(root_b, root_a))};
    std::sort(sides.begin(), sides.end());
    root += "edge" + sides[0] + sides[1];
  } else if (root_a >= 0 && tree.node(root_a).leaf) {
    root += "leaf" + tree.node(root_a).name;
  } else if (root_a >= 0) {
    std::vector<std::string> sides;
    for (glt::NodeId w : tree.neighbors(root_a)) sides.push_back(leaf_set(tree.side_leaves(root_a, w)));
    std::sort(sides.begin(), sides.end());
    root += "node";
    for (const auto& s : sides) root += s;
  }
  return tree.named_form() + root;
}

void ModularGLT::dump(std::ostream& out) const {
  if (root_is_edge())
    out << "root edge " << root_a << " " << root_b << "\n";
  else
    out << "root node " << root_a << "\n";
  tree.dump(out);
}

ModularGLT md_to_modular_glt(const MDTree& md) {
  if (md.nodes.empty()) throw std::invalid_argument("empty modular decomposition tree");
  ModularGLT out;
  glt::GraphLabelledTree& t = out.tree;
  const MDNode& top = md.nodes[0];
  if (top.kind == MDKind::Leaf) {
    out.root_a = t.add_leaf(top.name);
    return out;
  }
  if (top.kind == MDKind::Parallel) throw std::invalid_argument("graph is disconnected");

  // Makes `m`, the marker of child node c toward its parent, universal.
  auto make_universal = [&](glt::NodeId c, glt::MarkerId m) {
    if (t.node(c).leaf) return;
    for (glt::MarkerId o : t.node(c).markers)
      if (o != m) t.add_label_edge(m, o);
  };
  std::function<glt::NodeId(int)> build = [&](int u) -> glt::NodeId {
    const MDNode& n = md.nodes[u];
    if (n.kind == MDKind::Leaf) return t.add_leaf(n.name);
    const glt::NodeId v = t.add_internal();
    std::vector<glt::MarkerId> mk;
    for (int c : n.children) {
      const glt::NodeId cv = build(c);
      auto [mv, mc] = t.connect(v, cv);
      make_universal(cv, mc);
      mk.push_back(mv);
    }
    for (auto [a, b] : n.quotient.edges()) t.add_label_edge(mk[a], mk[b]);
    return v;
  };

  if (top.children.size() == 2) {
    const glt::NodeId a = build(top.children[0]);
    const glt::NodeId b = build(top.children[1]);
    auto [ma, mb] = t.connect(a, b);
    make_universal(a, ma);
    make_universal(b, mb);
    out.root_a = a;
    out.root_b = b;
  } else {
    out.root_a = build(0);
  }
  return out;
}

glt::GraphLabelledTree modular_glt_to_splittree(const ModularGLT& m) {
  glt::GraphLabelledTree t = m.tree;
  std::vector<glt::NodeId> work = t.internal_nodes();
  while (!work.empty()) {
    const glt::NodeId v = work.back();
    work.pop_back();
    if (t.classify(v) != glt::LabelKind::Other) continue;
    std::vector<glt::MarkerId> order;
    const Graph label = t.label_graph(v, &order);
    const auto split = glt::find_split_bruteforce(label);
    if (!split) continue;
    std::set<glt::MarkerId> side;
    for (Vertex i : split->first) side.insert(order[i]);
    auto [a, b] = t.node_split(v, side);
    work.push_back(a);
    work.push_back(b);
  }
  t.reduce();
  return t;
}

ModularGLT splittree_to_modular_glt(const glt::GraphLabelledTree& t) {
  ModularGLT out;
  out.tree = t;
  glt::GraphLabelledTree& tr = out.tree;
  const std::vector<glt::NodeId> internal = tr.internal_nodes();
  if (internal.empty()) {
    const std::vector<glt::NodeId> leaves = tr.leaves();
    if (leaves.empty()) return out;
    out.root_a = leaves[0];
    if (leaves.size() == 2) out.root_b = leaves[1];
    return out;
  }

  std::set<glt::NodeId> peeled;
  for (bool changed = true; changed;) {
    changed = false;
    for (glt::NodeId v : internal) {
      if (peeled.count(v)) continue;
      std::vector<glt::NodeId> open;
      for (glt::NodeId w : tr.neighbors(v))
        if (!tr.node(w).leaf && !peeled.count(w)) open.push_back(w);
      bool ok = false;
      if (open.size() == 1) {
        ok = is_universal(tr, v, tr.marker_toward(v, open[0]));
      } else if (open.empty()) {
        for (glt::MarkerId mk : tr.node(v).markers) ok = ok || is_universal(tr, v, mk);
      }
      if (ok) {
        peeled.insert(v);
        changed = true;
      }
    }
  }

  std::set<glt::NodeId> core;
  for (glt::NodeId v : internal)
    if (!peeled.count(v)) core.insert(v);
  for (bool joined = true; joined;) {
    joined = false;
    for (glt::NodeId v : core) {
      for (glt::NodeId w : tr.neighbors(v))
        if (w != v && core.count(w)) {
          const glt::NodeId keep = tr.edge_join(v, w);
          core.erase(v);
          core.erase(w);
          core.insert(keep);
          joined = true;
          break;
        }
      if (joined) break;
    }
  }

  if (!core.empty()) expand_modules(tr, *core.begin());

  // The root is where every universal marker converges.
  std::vector<glt::NodeId> candidates;
  for (glt::NodeId x : tr.nodes()) {
    const auto hop = hops_toward(tr, x);
    bool ok = true;
    for (glt::NodeId v : tr.internal_nodes())
      if (v != x && !is_universal(tr, v, tr.marker_toward(v, hop.at(v)))) {
        ok = false;
        break;
      }
    if (ok) candidates.push_back(x);
  }
  for (glt::NodeId x : candidates)
    if (!tr.node(x).leaf && tr.classify(x) == glt::LabelKind::Clique) {
      out.root_a = x;
      return out;
    }
  if (candidates.size() == 1) {
    out.root_a = candidates[0];
  } else if (candidates.size() == 2) {
    out.root_a = candidates[0];
    out.root_b = candidates[1];
  } else {
    throw std::logic_error("no unique root for the modular graph-labelled tree");
  }
  return out;
}

bool satisfies_gallai(const ModularGLT& m) {
  const glt::GraphLabelledTree& t = m.tree;
  if (!t.is_reduced()) return false;
  if (t.internal_nodes().empty()) return true;
  if (m.root_a < 0) return false;
  const auto hop_a = hops_toward(t, m.root_a);
  for (glt::NodeId v : t.internal_nodes()) {
    if (v == m.root_a && !m.root_is_edge()) continue;
    glt::NodeId toward;
    if (v == m.root_a)
      toward = m.root_b;
    else if (v == m.root_b)
      toward = m.root_a;
    else
      toward = hop_a.at(v);
    const glt::MarkerId mk = t.marker_toward(v, toward);
    if (!is_universal(t, v, mk)) return false;
    std::vector<glt::MarkerId> order;
    Graph label = t.label_graph(v, &order);
    const auto pos = std::find(order.begin(), order.end(), mk) - order.begin();
    label.remove_vertex(static_cast<Vertex>(pos));
    if (!m_degenerate(label) && !is_m_prime(label)) return false;
  }
  return true;
}

}  // namespace splitdh
