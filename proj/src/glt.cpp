#include "splitdh/glt.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace splitdh::glt {

const char* to_string(LabelKind k) {
  switch (k) {
    case LabelKind::Clique: return "clique";
    case LabelKind::Star: return "star";
    case LabelKind::Prime: return "prime";
    case LabelKind::Other: return "other";
  }
  return "?";
}

// ---- construction -----------------------------------------------------------

GraphLabelledTree GraphLabelledTree::single_node(const Graph& g) {
  GraphLabelledTree t;
  const auto verts = g.vertices();
  if (verts.empty()) return t;
  if (verts.size() == 1) {
    t.add_leaf(g.name(verts[0]));
    return t;
  }
  if (verts.size() == 2) {
    NodeId a = t.add_leaf(g.name(verts[0]));
    NodeId b = t.add_leaf(g.name(verts[1]));
    t.connect(a, b);
    return t;
  }
  NodeId root = t.add_internal();
  std::map<Vertex, MarkerId> mk;
  for (Vertex v : verts) mk[v] = t.connect(root, t.add_leaf(g.name(v))).first;
  for (auto [u, v] : g.edges()) t.add_label_edge(mk[u], mk[v]);
  return t;
}

NodeId GraphLabelledTree::add_leaf(const std::string& name) {
  Node n;
  n.leaf = true;
  n.name = name;
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId GraphLabelledTree::add_internal() {
  nodes_.emplace_back();
  return static_cast<NodeId>(nodes_.size()) - 1;
}

std::pair<MarkerId, MarkerId> GraphLabelledTree::connect(NodeId a, NodeId b) {
  auto attach = [&](NodeId x, NodeId y) -> MarkerId {
    Node& n = nodes_.at(x);
    if (n.leaf) {
      if (n.leaf_neighbor >= 0) throw std::logic_error("leaf already attached");
      n.leaf_neighbor = y;
      return -1;
    }
    const MarkerId m = static_cast<MarkerId>(markers_.size());
    markers_.push_back({x, y});
    n.markers.push_back(m);
    n.label[m];
    return m;
  };
  MarkerId ma = attach(a, b);
  MarkerId mb = attach(b, a);
  return {ma, mb};
}

void GraphLabelledTree::add_label_edge(MarkerId a, MarkerId b) {
  const NodeId v = markers_.at(a).owner;
  if (v != markers_.at(b).owner || a == b) throw std::invalid_argument("bad label edge");
  nodes_[v].label[a].insert(b);
  nodes_[v].label[b].insert(a);
}

// ---- queries -------------------------------------------------------------------

std::vector<NodeId> GraphLabelledTree::nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < node_slots(); ++v)
    if (nodes_[v].alive) out.push_back(v);
  return out;
}

std::vector<NodeId> GraphLabelledTree::internal_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < node_slots(); ++v)
    if (nodes_[v].alive && !nodes_[v].leaf) out.push_back(v);
  return out;
}

std::vector<NodeId> GraphLabelledTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < node_slots(); ++v)
    if (nodes_[v].alive && nodes_[v].leaf) out.push_back(v);
  return out;
}

std::optional<NodeId> GraphLabelledTree::leaf_by_name(const std::string& name) const {
  for (NodeId v : leaves())
    if (nodes_[v].name == name) return v;
  return std::nullopt;
}

std::vector<NodeId> GraphLabelledTree::neighbors(NodeId v) const {
  const Node& n = nodes_.at(v);
  if (n.leaf) return n.leaf_neighbor >= 0 ? std::vector<NodeId>{n.leaf_neighbor} : std::vector<NodeId>{};
  std::vector<NodeId> out;
  for (MarkerId m : n.markers) out.push_back(markers_[m].toward);
  return out;
}

int GraphLabelledTree::degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }

MarkerId GraphLabelledTree::marker_toward(NodeId v, NodeId nbr) const {
  for (MarkerId m : nodes_.at(v).markers)
    if (markers_[m].toward == nbr) return m;
  throw std::invalid_argument("nodes are not adjacent");
}

bool GraphLabelledTree::label_edge(MarkerId a, MarkerId b) const {
  const Node& n = nodes_.at(markers_.at(a).owner);
  auto it = n.label.find(a);
  return it != n.label.end() && it->second.count(b) > 0;
}

MarkerId GraphLabelledTree::star_centre(NodeId v) const {
  const Node& n = nodes_.at(v);
  const std::size_t k = n.markers.size();
  for (MarkerId m : n.markers)
    if (n.label.at(m).size() + 1 == k) return m;
  return -1;
}

LabelKind GraphLabelledTree::classify(NodeId v) const {
  const Node& n = nodes_.at(v);
  const std::size_t k = n.markers.size();
  std::size_t twice_edges = 0;
  for (const auto& [_, nb] : n.label) twice_edges += nb.size();
  const std::size_t e = twice_edges / 2;
  if (k >= 2 && e == k * (k - 1) / 2) return LabelKind::Clique;
  if (k >= 3 && e == k - 1) {
    const MarkerId c = star_centre(v);
    if (c >= 0) return LabelKind::Star;
  }
  if (k >= 4 && !find_split_bruteforce(label_graph(v))) return LabelKind::Prime;
  return LabelKind::Other;
}

Graph GraphLabelledTree::label_graph(NodeId v, std::vector<MarkerId>* order) const {
  const Node& n = nodes_.at(v);
  Graph g;
  std::map<MarkerId, Vertex> id;
  for (MarkerId m : n.markers) id[m] = g.add_vertex("m" + std::to_string(m));
  for (const auto& [m, nb] : n.label)
    for (MarkerId o : nb)
      if (o > m) g.add_edge(id[m], id[o]);
  if (order) *order = n.markers;
  return g;
}

std::vector<std::string> GraphLabelledTree::side_leaves(NodeId from, NodeId toward) const {
  std::vector<std::string> out;
  std::vector<std::pair<NodeId, NodeId>> stack{{toward, from}};
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    if (nodes_[v].leaf) out.push_back(nodes_[v].name);
    for (NodeId u : neighbors(v))
      if (u != parent) stack.emplace_back(u, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- semantics -------------------------------------------------------------------

Graph GraphLabelledTree::accessibility_graph() const {
  Graph g;
  std::map<NodeId, Vertex> vid;
  for (NodeId l : leaves()) vid[l] = g.add_vertex(nodes_[l].name);
  for (NodeId l : leaves()) {
    const NodeId first = nodes_[l].leaf_neighbor;
    if (first < 0) continue;
    std::vector<std::pair<NodeId, NodeId>> stack{{first, l}};  // (node, came from)
    while (!stack.empty()) {
      auto [v, prev] = stack.back();
      stack.pop_back();
      if (nodes_[v].leaf) {
        if (v > l) g.add_edge(vid[l], vid[v]);
        continue;
      }
      const MarkerId in = marker_toward(v, prev);
      for (MarkerId m : nodes_[v].label.at(in)) stack.emplace_back(markers_[m].toward, v);
    }
  }
  return g;
}

bool GraphLabelledTree::is_accessible(NodeId from, NodeId target) const {
  if (!nodes_.at(from).leaf) throw std::invalid_argument("accessibility starts at a leaf");
  if (from == target) return false;
  // Parent pointers of a search rooted at `from`.
  std::map<NodeId, NodeId> parent{{from, -1}};
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : neighbors(v))
      if (!parent.count(u)) {
        parent[u] = v;
        stack.push_back(u);
      }
  }
  if (!parent.count(target)) return false;
  std::vector<NodeId> path{target};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const NodeId v = path[i];
    if (!label_edge(marker_toward(v, path[i - 1]), marker_toward(v, path[i + 1]))) return false;
  }
  return true;
}

bool GraphLabelledTree::is_clique_star() const {
  for (NodeId v : internal_nodes()) {
    const LabelKind k = classify(v);
    if (k != LabelKind::Clique && k != LabelKind::Star) return false;
  }
  return true;
}

bool GraphLabelledTree::is_reduced() const {
  for (NodeId v : internal_nodes()) {
    if (degree(v) < 3) return false;
    const LabelKind kv = classify(v);
    for (NodeId u : neighbors(v)) {
      if (nodes_[u].leaf) continue;
      const LabelKind ku = classify(u);
      if (kv == LabelKind::Clique && ku == LabelKind::Clique) return false;
      if (kv == LabelKind::Star && ku == LabelKind::Star &&
          star_centre(v) == marker_toward(v, u) && star_centre(u) != marker_toward(u, v))
        return false;
    }
  }
  return true;
}

// ---- rewriting ---------------------------------------------------------------------

void GraphLabelledTree::retarget(NodeId nbr, NodeId from, NodeId to) {
  Node& n = nodes_[nbr];
  if (n.leaf) {
    n.leaf_neighbor = to;
    return;
  }
  markers_[marker_toward(nbr, from)].toward = to;
}

std::pair<NodeId, NodeId> GraphLabelledTree::node_split(NodeId v, const std::set<MarkerId>& a_side) {
  Node& nv = nodes_.at(v);
  if (nv.leaf) throw std::invalid_argument("cannot split a leaf");
  std::set<MarkerId> b_side;
  for (MarkerId m : nv.markers) {
    if (!a_side.count(m)) b_side.insert(m);
  }
  for (MarkerId m : a_side)
    if (markers_.at(m).owner != v) throw std::invalid_argument("marker not on node");
  if (a_side.size() < 2 || b_side.size() < 2) throw std::invalid_argument("split sides need two markers");
  std::set<MarkerId> frontier_a, frontier_b;  // markers with a neighbour across
  for (MarkerId a : a_side)
    for (MarkerId o : nv.label.at(a))
      if (b_side.count(o)) {
        frontier_a.insert(a);
        frontier_b.insert(o);
      }
  for (MarkerId a : frontier_a)
    for (MarkerId b : frontier_b)
      if (!nv.label.at(a).count(b)) throw std::invalid_argument("bipartition is not a split of the label");

  const NodeId w = add_internal();
  Node& nw = nodes_[w];
  Node& nv2 = nodes_[v];  // add_internal may reallocate
  for (MarkerId b : b_side) {
    markers_[b].owner = w;
    nw.markers.push_back(b);
    std::set<MarkerId> keep;
    for (MarkerId o : nv2.label.at(b))
      if (b_side.count(o)) keep.insert(o);
    nw.label[b] = std::move(keep);
    retarget(markers_[b].toward, v, w);
  }
  for (MarkerId b : b_side) nv2.label.erase(b);
  for (auto& [m, nb] : nv2.label)
    for (MarkerId b : b_side) nb.erase(b);
  std::erase_if(nv2.markers, [&](MarkerId m) { return b_side.count(m) > 0; });

  auto [ma, mb] = connect(v, w);
  for (MarkerId a : frontier_a) add_label_edge(ma, a);
  for (MarkerId b : frontier_b) add_label_edge(mb, b);
  return {v, w};
}

NodeId GraphLabelledTree::edge_join(NodeId u, NodeId v) {
  if (nodes_.at(u).leaf || nodes_.at(v).leaf) throw std::invalid_argument("join needs two internal nodes");
  const MarkerId mu = marker_toward(u, v);
  const MarkerId mv = marker_toward(v, u);
  const std::set<MarkerId> nu = nodes_[u].label.at(mu);
  const std::set<MarkerId> nvv = nodes_[v].label.at(mv);

  Node& a = nodes_[u];
  for (MarkerId o : nu) a.label[o].erase(mu);
  a.label.erase(mu);
  std::erase(a.markers, mu);
  markers_[mu].owner = -1;

  Node& b = nodes_[v];
  for (MarkerId m : b.markers) {
    if (m == mv) continue;
    markers_[m].owner = u;
    a.markers.push_back(m);
    std::set<MarkerId> nb = b.label.at(m);
    nb.erase(mv);
    a.label[m] = std::move(nb);
    retarget(markers_[m].toward, v, u);
  }
  markers_[mv].owner = -1;
  b.markers.clear();
  b.label.clear();
  b.alive = false;
  for (MarkerId x : nu)
    for (MarkerId y : nvv) add_label_edge(x, y);
  return u;
}

void GraphLabelledTree::reduce() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v : internal_nodes()) {
      if (!nodes_[v].alive || degree(v) != 2) continue;
      const auto nb = neighbors(v);
      const NodeId a = nb[0], b = nb[1];
      if (!nodes_[a].leaf) {
        edge_join(a, v);
        changed = true;
      } else if (!nodes_[b].leaf) {
        edge_join(b, v);
        changed = true;
      } else if (label_edge(nodes_[v].markers[0], nodes_[v].markers[1])) {
        nodes_[a].leaf_neighbor = b;
        nodes_[b].leaf_neighbor = a;
        for (MarkerId m : nodes_[v].markers) markers_[m].owner = -1;
        nodes_[v] = Node{};
        nodes_[v].alive = false;
        changed = true;
      }
    }
    if (changed) continue;
    for (NodeId v : internal_nodes()) {
      const LabelKind kv = classify(v);
      for (NodeId u : neighbors(v)) {
        if (nodes_[u].leaf) continue;
        const LabelKind ku = classify(u);
        const bool clique_join = kv == LabelKind::Clique && ku == LabelKind::Clique;
        const bool star_join = kv == LabelKind::Star && ku == LabelKind::Star &&
                               star_centre(v) == marker_toward(v, u) &&
                               star_centre(u) != marker_toward(u, v);
        if (clique_join || star_join) {
          edge_join(v, u);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
}

GraphLabelledTree GraphLabelledTree::induced(const std::set<std::string>& leaf_names) const {
  if (leaf_names.empty()) throw std::invalid_argument("induced tree needs a nonempty leaf set");
  for (const auto& name : leaf_names)
    if (!leaf_by_name(name)) throw std::invalid_argument("unknown leaf '" + name + "'");
  GraphLabelledTree t = *this;
  auto drop_marker = [&](MarkerId m) {
    Node& n = t.nodes_[t.markers_[m].owner];
    for (MarkerId o : n.label.at(m)) n.label[o].erase(m);
    n.label.erase(m);
    std::erase(n.markers, m);
    t.markers_[m].owner = -1;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v : t.nodes()) {
      Node& n = t.nodes_[v];
      const bool prunable = n.leaf ? !leaf_names.count(n.name) : t.degree(v) <= 1;
      if (!prunable) continue;
      for (NodeId u : t.neighbors(v)) {
        if (t.nodes_[u].leaf) {
          t.nodes_[u].leaf_neighbor = -1;
        } else {
          drop_marker(t.marker_toward(u, v));
        }
      }
      for (MarkerId m : t.nodes_[v].markers) t.markers_[m].owner = -1;
      t.nodes_[v] = Node{};
      t.nodes_[v].alive = false;
      changed = true;
    }
  }
  return t;
}

std::vector<Bipartition> GraphLabelledTree::edge_splits(const Graph& g) const {
  std::set<Bipartition> out;
  const auto all = g.vertices();
  for (NodeId v : internal_nodes())
    for (NodeId u : neighbors(v)) {
      if (nodes_[u].leaf || u < v) continue;
      std::set<Vertex> side;
      for (const auto& name : side_leaves(v, u)) side.insert(g.id(name));
      Bipartition b;
      for (Vertex x : all) (side.count(x) ? b.first : b.second).push_back(x);
      if (!b.first.empty() && (b.second.empty() || b.second.front() < b.first.front())) std::swap(b.first, b.second);
      out.insert(std::move(b));
    }
  return {out.begin(), out.end()};
}

std::string GraphLabelledTree::named_form() const {
  std::vector<std::string> parts;
  for (NodeId v : nodes()) {
    const Node& n = nodes_[v];
    if (n.leaf) {
      if (n.leaf_neighbor < 0) parts.push_back("L[" + n.name + "]");
      else if (nodes_[n.leaf_neighbor].leaf && n.name < nodes_[n.leaf_neighbor].name)
        parts.push_back("LL[" + n.name + "," + nodes_[n.leaf_neighbor].name + "]");
      continue;
    }
    std::map<MarkerId, std::string> key;
    for (MarkerId m : n.markers) {
      std::string k = "{";
      for (const auto& s : side_leaves(v, markers_[m].toward)) k += s + ",";
      key[m] = k + "}";
    }
    std::vector<std::string> ms, es;
    for (auto& [m, k] : key) ms.push_back(k);
    for (const auto& [m, nb] : n.label)
      for (MarkerId o : nb) {
        if (key[m] < key[o]) es.push_back(key[m] + "~" + key[o]);
      }
    std::sort(ms.begin(), ms.end());
    std::sort(es.begin(), es.end());
    std::string s = "N[";
    for (auto& x : ms) s += x;
    s += "|";
    for (auto& x : es) s += x;
    parts.push_back(s + "]");
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (auto& p : parts) out += p;
  return out;
}

void GraphLabelledTree::dump(std::ostream& out) const {
  for (NodeId v : nodes()) {
    const Node& n = nodes_[v];
    if (n.leaf) {
      out << "leaf " << v << ' ' << n.name << " nbr " << n.leaf_neighbor << '\n';
      continue;
    }
    out << "node " << v << ' ' << to_string(classify(v)) << " markers";
    for (MarkerId m : n.markers) out << ' ' << m << ':' << markers_[m].toward;
    out << " edges";
    for (const auto& [m, nb] : n.label)
      for (MarkerId o : nb)
        if (o > m) out << ' ' << m << '-' << o;
    out << '\n';
  }
}

void GraphLabelledTree::dot(std::ostream& out) const {
  out << "graph glt {\n";
  for (NodeId v : nodes()) {
    const Node& n = nodes_[v];
    if (n.leaf) {
      out << "  n" << v << " [shape=plaintext,label=\"" << n.name << "\"];\n";
    } else {
      out << "  n" << v << " [shape=circle,label=\"" << to_string(classify(v)) << "\"];\n";
    }
  }
  for (NodeId v : nodes())
    for (NodeId u : neighbors(v))
      if (u > v) out << "  n" << v << " -- n" << u << ";\n";
  out << "}\n";
}

// ---- brute-force split decomposition --------------------------------------------------

namespace {

bool is_split_mask(const DenseGraph& d, std::uint64_t side) {
  const std::uint64_t full = d.n == 64 ? ~0ULL : (1ULL << d.n) - 1;
  const std::uint64_t other = full & ~side;
  std::uint64_t frontier_other = 0;  // N(side)
  for (int v = 0; v < d.n; ++v)
    if ((side >> v) & 1U) frontier_other |= d.adj[v] & other;
  for (int v = 0; v < d.n; ++v)
    if ((side >> v) & 1U) {
      const std::uint64_t across = d.adj[v] & other;
      if (across && across != frontier_other) return false;
    }
  return true;
}

Bipartition to_bipartition(const std::vector<Vertex>& order, int n, std::uint64_t side) {
  Bipartition b;
  for (int v = 0; v < n; ++v) ((side >> v) & 1U ? b.first : b.second).push_back(order[v]);
  return b;
}

}  // namespace

std::vector<Bipartition> enumerate_splits_raw(const Graph& g) {
  std::vector<Vertex> order;
  const DenseGraph d = DenseGraph::from(g, &order);
  if (d.n > kSplitOracleCap) throw std::invalid_argument("graph exceeds the split oracle cap");
  std::vector<Bipartition> out;
  for (std::uint64_t side = 1; side < (1ULL << d.n); side += 2) {
    const int k = std::popcount(side);
    if (k < 2 || d.n - k < 2) continue;
    if (is_split_mask(d, side)) out.push_back(to_bipartition(order, d.n, side));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Bipartition> find_split_bruteforce(const Graph& g) {
  std::vector<Vertex> order;
  const DenseGraph d = DenseGraph::from(g, &order);
  if (d.n > kSplitOracleCap) throw std::invalid_argument("graph exceeds the split oracle cap");
  for (std::uint64_t side = 1; side < (1ULL << d.n); side += 2) {
    const int k = std::popcount(side);
    if (k < 2 || d.n - k < 2) continue;
    if (is_split_mask(d, side)) return to_bipartition(order, d.n, side);
  }
  return std::nullopt;
}

GraphLabelledTree split_tree_bruteforce(const Graph& g, std::mt19937* rng) {
  if (g.vertex_count() == 0 || !is_connected(g))
    throw std::invalid_argument("split_tree_bruteforce needs a connected non-empty graph");
  if (g.vertex_count() > kSplitOracleCap) throw std::invalid_argument("graph exceeds the split oracle cap");
  GraphLabelledTree t = GraphLabelledTree::single_node(g);
  for (;;) {
    std::vector<NodeId> todo;
    for (NodeId v : t.internal_nodes())
      if (t.classify(v) == LabelKind::Other) todo.push_back(v);
    if (todo.empty()) break;
    NodeId v = todo.front();
    if (rng) v = todo[std::uniform_int_distribution<std::size_t>(0, todo.size() - 1)(*rng)];
    std::vector<MarkerId> order;
    const Graph label = t.label_graph(v, &order);
    Bipartition split;
    if (rng) {
      const auto all = enumerate_splits_raw(label);
      split = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(*rng)];
    } else {
      split = *find_split_bruteforce(label);
    }
    std::set<MarkerId> a_side;
    for (Vertex x : split.first) a_side.insert(order[x]);
    t.node_split(v, a_side);
  }
  t.reduce();
  return t;
}

std::vector<Bipartition> enumerate_splits(const Graph& g) {
  const GraphLabelledTree t = split_tree_bruteforce(g);
  std::set<Bipartition> out;
  for (auto& b : t.edge_splits(g)) out.insert(b);
  const auto all = g.vertices();
  for (NodeId v : t.internal_nodes()) {
    const LabelKind k = t.classify(v);
    if (k != LabelKind::Clique && k != LabelKind::Star) continue;
    const auto& ms = t.node(v).markers;
    const int deg = static_cast<int>(ms.size());
    if (deg < 4) continue;
    std::vector<std::set<Vertex>> behind(deg);
    for (int i = 0; i < deg; ++i)
      for (const auto& name : t.side_leaves(v, t.marker(ms[i]).toward)) behind[i].insert(g.id(name));
    // Every bipartition of a clique or star label is a split of it.
    for (std::uint64_t side = 1; side < (1ULL << deg); side += 2) {
      const int c = std::popcount(side);
      if (c < 2 || deg - c < 2) continue;
      std::set<Vertex> first;
      for (int i = 0; i < deg; ++i)
        if ((side >> i) & 1U) first.insert(behind[i].begin(), behind[i].end());
      Bipartition b;
      for (Vertex x : all) (first.count(x) ? b.first : b.second).push_back(x);
      if (b.second.front() < b.first.front()) std::swap(b.first, b.second);
      out.insert(std::move(b));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace splitdh::glt
