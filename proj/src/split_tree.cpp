#include "splitdh/split_tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace splitdh {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Clique: return "clique";
    case NodeKind::Star: return "star";
  }
  return "?";
}

const char* to_string(Access a) {
  switch (a) {
    case Access::Fully: return "fully";
    case Access::Singly: return "singly";
    case Access::Partially: return "partially";
  }
  return "?";
}

// ---- vertices -----------------------------------------------------------------

bool SplitForest::has_vertex(Vertex v) const {
  return v >= 0 && v < vertex_slots() && leaf_of_[v] >= 0;
}

std::vector<Vertex> SplitForest::vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_slots(); ++v)
    if (leaf_of_[v] >= 0) out.push_back(v);
  return out;
}

std::optional<Vertex> SplitForest::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void SplitForest::ensure_vertex_slot(Vertex x, const std::string& name) {
  if (x < 0) throw std::invalid_argument("negative vertex id");
  if (x >= vertex_slots()) {
    names_.resize(x + 1);
    leaf_of_.resize(x + 1, -1);
  }
  if (names_[x].empty()) {
    names_[x] = name.empty() ? std::to_string(x) : name;
    by_name_.emplace(names_[x], x);
  }
}

Vertex SplitForest::reserve_vertex(const std::string& name) {
  if (!name.empty()) {
    if (auto v = find(name)) {
      if (has_vertex(*v)) throw std::invalid_argument("vertex '" + name + "' already present");
      return *v;
    }
  }
  const Vertex x = vertex_slots();
  ensure_vertex_slot(x, name);
  return x;
}

// ---- node storage ---------------------------------------------------------------

TreeNodeId SplitForest::new_node(NodeKind k) {
  TreeNodeId u;
  if (!free_nodes_.empty()) {
    u = free_nodes_.back();
    free_nodes_.pop_back();
    nodes_[u] = TreeNode{};
  } else {
    u = static_cast<TreeNodeId>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[u].alive = true;
  nodes_[u].kind = k;
  ensure_scratch();
  stamp_[u] = 0;
  touch_stamp_[u] = 0;
  touch(u);
  return u;
}

void SplitForest::free_node(TreeNodeId u) {
  nodes_[u] = TreeNode{};
  free_nodes_.push_back(u);
}

void SplitForest::ensure_scratch() {
  const std::size_t n = nodes_.size();
  if (stamp_.size() < n) {
    stamp_.resize(n, 0);
    marked_.resize(n, 0);
    marked_kids_.resize(n);
    orient_.resize(n, -1);
    touch_stamp_.resize(n, 0);
  }
}

void SplitForest::begin_op() {
  ++op_epoch_;
  stats_ = OpStats{};
}

void SplitForest::touch(TreeNodeId u) const {
  if (u < 0) return;
  if (touch_stamp_.size() <= static_cast<std::size_t>(u)) touch_stamp_.resize(nodes_.size(), 0);
  if (touch_stamp_[u] != op_epoch_) {
    touch_stamp_[u] = op_epoch_;
    ++stats_.touched;
  }
}

void SplitForest::attach(TreeNodeId p, TreeNodeId c) {
  nodes_[c].parent = p;
  nodes_[c].pos = static_cast<int>(nodes_[p].children.size());
  nodes_[p].children.push_back(c);
  touch(p);
  touch(c);
}

void SplitForest::detach(TreeNodeId c) {
  const TreeNodeId p = nodes_[c].parent;
  if (p < 0) return;
  auto& kids = nodes_[p].children;
  const int i = nodes_[c].pos;
  const TreeNodeId last = kids.back();
  kids[i] = last;
  nodes_[last].pos = i;
  kids.pop_back();
  nodes_[c].parent = -1;
  nodes_[c].pos = -1;
  touch(p);
  touch(c);
}

void SplitForest::replace_slot(TreeNodeId old_child, TreeNodeId new_child) {
  const TreeNodeId p = nodes_[old_child].parent;
  nodes_[p].children[nodes_[old_child].pos] = new_child;
  nodes_[new_child].parent = p;
  nodes_[new_child].pos = nodes_[old_child].pos;
  nodes_[old_child].parent = -1;
  nodes_[old_child].pos = -1;
  touch(p);
  touch(new_child);
}

void SplitForest::redirect_centre(TreeNodeId x, TreeNodeId from, TreeNodeId to) {
  if (nodes_[x].kind == NodeKind::Star && nodes_[x].centre == from) nodes_[x].centre = to;
}

void SplitForest::make_root(TreeNodeId u, ComponentId c) {
  nodes_[u].parent = -1;
  nodes_[u].pos = -1;
  nodes_[u].comp = c;
  comps_[c].root = u;
}

ComponentId SplitForest::new_component(TreeNodeId root, int size) {
  const ComponentId c = static_cast<ComponentId>(comps_.size());
  comps_.push_back({true, root, size});
  if (root >= 0) make_root(root, c);
  return c;
}

TreeNodeId SplitForest::new_leaf(Vertex x, ComponentId c) {
  const TreeNodeId l = new_node(NodeKind::Leaf);
  nodes_[l].vertex = x;
  nodes_[l].comp = c;
  leaf_of_[x] = l;
  ++live_vertices_;
  return l;
}

// ---- structure queries ------------------------------------------------------------

int SplitForest::degree(TreeNodeId u) const {
  const TreeNode& n = nodes_.at(u);
  return static_cast<int>(n.children.size()) + (n.parent >= 0 ? 1 : 0);
}

std::vector<TreeNodeId> SplitForest::neighbors(TreeNodeId u) const {
  const TreeNode& n = nodes_.at(u);
  std::vector<TreeNodeId> out = n.children;
  if (n.parent >= 0) out.push_back(n.parent);
  return out;
}

bool SplitForest::adjacent(TreeNodeId a, TreeNodeId b) const {
  return nodes_.at(a).parent == b || nodes_.at(b).parent == a;
}

std::vector<ComponentId> SplitForest::components() const {
  std::vector<ComponentId> out;
  for (ComponentId c = 0; c < static_cast<ComponentId>(comps_.size()); ++c)
    if (comps_[c].alive) out.push_back(c);
  return out;
}

ComponentId SplitForest::component_of(Vertex v) const {
  if (!has_vertex(v)) throw std::invalid_argument("unknown vertex " + std::to_string(v));
  return nodes_[leaf_of_[v]].comp;
}

std::vector<TreeNodeId> SplitForest::component_nodes(ComponentId c) const {
  std::vector<TreeNodeId> out;
  if (!comps_.at(c).alive) return out;
  std::vector<TreeNodeId> stack{comps_[c].root};
  while (!stack.empty()) {
    const TreeNodeId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (TreeNodeId ch : nodes_[u].children) stack.push_back(ch);
  }
  return out;
}

std::vector<Vertex> SplitForest::component_vertices(ComponentId c) const {
  std::vector<Vertex> out;
  for (TreeNodeId u : component_nodes(c))
    if (nodes_[u].kind == NodeKind::Leaf) out.push_back(nodes_[u].vertex);
  std::sort(out.begin(), out.end());
  return out;
}

int SplitForest::internal_node_count() const {
  int k = 0;
  for (const TreeNode& n : nodes_)
    if (n.alive && n.kind != NodeKind::Leaf) ++k;
  return k;
}

// ---- semantics ---------------------------------------------------------------------

std::vector<Vertex> SplitForest::accessible_from(Vertex l) const {
  if (!has_vertex(l)) throw std::invalid_argument("unknown vertex " + std::to_string(l));
  const TreeNodeId leaf = leaf_of_[l];
  std::vector<Vertex> out;
  std::vector<std::pair<TreeNodeId, TreeNodeId>> stack;  // (node, entered from)
  for (TreeNodeId u : neighbors(leaf)) stack.emplace_back(u, leaf);
  while (!stack.empty()) {
    auto [u, from] = stack.back();
    stack.pop_back();
    const TreeNode& n = nodes_[u];
    if (n.kind == NodeKind::Leaf) {
      out.push_back(n.vertex);
      continue;
    }
    if (n.kind == NodeKind::Star && n.centre != from) {
      stack.emplace_back(n.centre, u);
      continue;
    }
    for (TreeNodeId w : n.children)
      if (w != from) stack.emplace_back(w, u);
    if (n.parent >= 0 && n.parent != from) stack.emplace_back(n.parent, u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Vertex, Vertex>> SplitForest::accessibility_set(Vertex l) const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex m : accessible_from(l)) out.emplace_back(std::min(l, m), std::max(l, m));
  return out;
}

Graph SplitForest::to_graph() const {
  Graph g;
  std::map<Vertex, Vertex> gid;
  for (Vertex v : vertices()) gid[v] = g.add_vertex(names_[v]);
  for (auto [v, id] : gid)
    for (Vertex w : accessible_from(v))
      if (w > v) g.add_edge(id, gid.at(w));
  return g;
}

Graph SplitForest::component_graph(ComponentId c) const {
  Graph g;
  std::map<Vertex, Vertex> gid;
  for (Vertex v : component_vertices(c)) gid[v] = g.add_vertex(names_[v]);
  for (auto [v, id] : gid)
    for (Vertex w : accessible_from(v))
      if (w > v) g.add_edge(id, gid.at(w));
  return g;
}

glt::GraphLabelledTree SplitForest::to_glt(ComponentId c) const {
  glt::GraphLabelledTree t;
  std::map<TreeNodeId, glt::NodeId> id;
  const auto nodes = component_nodes(c);
  for (TreeNodeId u : nodes)
    id[u] = nodes_[u].kind == NodeKind::Leaf ? t.add_leaf(names_[nodes_[u].vertex]) : t.add_internal();
  for (TreeNodeId u : nodes)
    if (nodes_[u].parent >= 0) t.connect(id[nodes_[u].parent], id[u]);
  for (TreeNodeId u : nodes) {
    const TreeNode& n = nodes_[u];
    if (n.kind == NodeKind::Leaf) continue;
    const auto nb = neighbors(u);
    if (n.kind == NodeKind::Clique) {
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          t.add_label_edge(t.marker_toward(id[u], id[nb[i]]), t.marker_toward(id[u], id[nb[j]]));
    } else {
      const glt::MarkerId centre = t.marker_toward(id[u], id[n.centre]);
      for (TreeNodeId w : nb)
        if (w != n.centre) t.add_label_edge(centre, t.marker_toward(id[u], id[w]));
    }
  }
  return t;
}

// ---- spanning subtree --------------------------------------------------------------

bool SplitForest::in_span(TreeNodeId u) const {
  return u >= 0 && static_cast<std::size_t>(u) < stamp_.size() && stamp_[u] == epoch_ && marked_[u];
}

std::vector<TreeNodeId> SplitForest::span_neighbors(TreeNodeId u) const {
  std::vector<TreeNodeId> out;
  for (TreeNodeId c : marked_kids_[u])
    if (in_span(c)) out.push_back(c);
  const TreeNodeId p = nodes_[u].parent;
  if (u != span_root_ && in_span(p)) out.push_back(p);
  return out;
}

std::optional<std::string> SplitForest::validate_neighborhood(const std::vector<Vertex>& s) const {
  std::vector<Vertex> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "duplicate vertex in neighbourhood";
  for (Vertex v : s)
    if (!has_vertex(v)) return "unknown vertex " + std::to_string(v) + " in neighbourhood";
  return std::nullopt;
}

SpanView SplitForest::spanning_subtree(const std::vector<Vertex>& s) {
  if (s.empty()) throw std::invalid_argument("spanning subtree of an empty set");
  if (auto err = validate_neighborhood(s)) throw std::invalid_argument(*err);
  ensure_scratch();
  ++epoch_;
  SpanView view;
  const int cap = 4 * static_cast<int>(s.size());
  const TreeNodeId root = comps_[component_of(s.front())].root;
  std::vector<TreeNodeId> all;

  auto fresh = [&](TreeNodeId u) {
    if (stamp_[u] != epoch_) {
      stamp_[u] = epoch_;
      marked_[u] = 0;
      marked_kids_[u].clear();
    }
  };
  auto is_marked = [&](TreeNodeId u) { return u >= 0 && stamp_[u] == epoch_ && marked_[u]; };
  auto mark = [&](TreeNodeId u) {
    fresh(u);
    marked_[u] = 1;
    if (nodes_[u].kind != NodeKind::Leaf) ++view.marked;
    all.push_back(u);
    touch(u);
    const TreeNodeId p = nodes_[u].parent;
    if (p >= 0) {
      fresh(p);
      marked_kids_[p].push_back(u);
    }
  };
  auto is_active = [&](TreeNodeId u) { return is_marked(u) && u != root && !is_marked(nodes_[u].parent); };

  for (Vertex y : s) {
    if (component_of(y) != component_of(s.front())) throw std::invalid_argument("neighbourhood spans several components");
    mark(leaf_of_[y]);
  }
  std::vector<TreeNodeId> current;
  int active = 0;
  for (Vertex y : s)
    if (is_active(leaf_of_[y])) {
      current.push_back(leaf_of_[y]);
      ++active;
    }
  auto needs_more = [&] { return is_marked(root) ? active >= 1 : active >= 2; };
  // Synchronous rounds: every active node of a round climbs one step.
  while (needs_more()) {
    std::vector<TreeNodeId> next;
    std::size_t i = 0;
    for (; i < current.size() && needs_more(); ++i) {
      const TreeNodeId a = current[i];
      if (!is_active(a)) continue;
      const TreeNodeId p = nodes_[a].parent;
      mark(p);
      active -= static_cast<int>(marked_kids_[p].size());
      if (p != root && !is_marked(nodes_[p].parent)) {
        ++active;
        next.push_back(p);
      }
      if (view.marked > cap) {
        view.too_large = true;
        stats_.marked = view.marked;
        return view;
      }
    }
    for (; i < current.size(); ++i)
      if (is_active(current[i])) next.push_back(current[i]);
    current = std::move(next);
  }
  TreeNodeId top = root;
  if (!is_marked(root)) {
    top = -1;
    for (TreeNodeId a : current)
      if (is_active(a)) top = a;
  }
  // Trim the part of the walk above the lowest common ancestor.
  while (nodes_[top].kind != NodeKind::Leaf && marked_kids_[top].size() == 1) {
    marked_[top] = 0;
    top = marked_kids_[top].front();
  }
  span_root_ = top;
  view.root = top;
  for (TreeNodeId u : all)
    if (is_marked(u)) {
      view.nodes.push_back(u);
      int d = 0;
      for (TreeNodeId c : marked_kids_[u]) d += is_marked(c) ? 1 : 0;
      if (u != top && is_marked(nodes_[u].parent)) ++d;
      view.degree.push_back(d);
    }
  stats_.marked = view.marked;
  return view;
}

std::vector<std::pair<TreeNodeId, Access>> SplitForest::classify_access(const SpanView& view) const {
  std::vector<std::pair<TreeNodeId, Access>> out;
  for (std::size_t i = 0; i < view.nodes.size(); ++i) {
    const TreeNodeId u = view.nodes[i];
    const TreeNode& n = nodes_[u];
    if (n.kind == NodeKind::Leaf) continue;
    Access a = Access::Partially;
    if (view.degree[i] == degree(u)) {
      a = Access::Fully;
    } else if (n.kind == NodeKind::Star && view.degree[i] == 2 && in_span(n.centre)) {
      a = Access::Singly;
    }
    out.emplace_back(u, a);
  }
  return out;
}

// ---- insertion check -----------------------------------------------------------------

Verdict SplitForest::check_vertex_insertion(const std::vector<Vertex>& s) {
  Verdict verdict;
  if (auto err = validate_neighborhood(s)) {
    verdict.reason = *err;
    return verdict;
  }
  if (s.empty()) {
    verdict.accept = true;
    verdict.locus.kind = LocusKind::Isolated;
    return verdict;
  }
  std::set<ComponentId> cs;
  for (Vertex v : s) cs.insert(component_of(v));
  if (cs.size() > 1) {
    // Decided by rebuilding the merged component on a scratch forest.
    SplitForest scratch;
    Vertex x = vertex_slots();
    std::vector<Vertex> order;
    std::map<Vertex, std::vector<Vertex>> adj;
    for (ComponentId c : cs)
      for (Vertex v : component_vertices(c)) adj[v] = accessible_from(v);
    for (Vertex v : s) {
      adj[x].push_back(v);
      adj[v].push_back(x);
    }
    std::set<Vertex> seen{x};
    std::deque<Vertex> queue{x};
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      std::vector<Vertex> back;
      for (Vertex w : adj[u])
        if (scratch.has_vertex(w)) back.push_back(w);
      scratch.ensure_vertex_slot(u, "");
      if (!scratch.insert_vertex_with_id(u, back).verdict.accept) {
        verdict.reason = "merged component is not distance hereditary";
        return verdict;
      }
      for (Vertex w : adj[u])
        if (seen.insert(w).second) queue.push_back(w);
    }
    verdict.accept = true;
    verdict.locus.kind = LocusKind::Merge;
    return verdict;
  }
  const ComponentId c = *cs.begin();
  if (comps_[c].size <= 2) {
    verdict.accept = true;
    verdict.locus.kind = LocusKind::Small;
    return verdict;
  }
  if (s.size() == 1) {
    verdict.accept = true;
    verdict.locus = {LocusKind::Pendant, leaf_of_[s[0]], nodes_[leaf_of_[s[0]]].parent};
    verdict.span_size = 1;
    verdict.marked = 1;
    return verdict;
  }

  const SpanView view = spanning_subtree(s);
  verdict.marked = view.marked;
  if (view.too_large) {
    verdict.reason = "spanning subtree marking exceeded 4|S| nodes";
    return verdict;
  }
  verdict.span_size = static_cast<int>(view.nodes.size());
  const auto access = classify_access(view);
  std::map<TreeNodeId, Access> acc(access.begin(), access.end());
  for (auto [u, a] : access)
    if (a == Access::Partially) {
      if (verdict.partial >= 0) {
        verdict.reason = "two partially accessible nodes";
        return verdict;
      }
      verdict.partial = u;
    }

  // Local orientations.
  std::vector<TreeNodeId> cliques;
  for (TreeNodeId u : view.nodes) {
    const TreeNode& n = nodes_[u];
    if (n.kind == NodeKind::Leaf) {
      orient_[u] = n.parent;
    } else if (acc[u] == Access::Partially) {
      orient_[u] = u;
    } else if (n.kind == NodeKind::Star) {
      if (acc[u] == Access::Fully) {
        orient_[u] = n.centre;
      } else {
        orient_[u] = -1;
        for (TreeNodeId w : span_neighbors(u))
          if (w != n.centre) orient_[u] = w;
      }
    } else {
      cliques.push_back(u);
    }
  }
  for (TreeNodeId u : cliques) {
    int away = 0;
    TreeNodeId target = u;
    for (TreeNodeId w : neighbors(u)) {
      touch(w);
      if (orient_[w] != u) {
        ++away;
        target = w;
      }
    }
    if (away >= 2) {
      verdict.reason = "obstruction at a clique node";
      return verdict;
    }
    orient_[u] = target;
  }
  for (TreeNodeId u : view.nodes)
    for (TreeNodeId w : span_neighbors(u))
      if (w != orient_[u] && orient_[w] != u) {
        verdict.reason = "local orientations are not compatible";
        return verdict;
      }
  int roots = 0;
  for (TreeNodeId u : view.nodes) {
    const TreeNodeId f = orient_[u];
    if (f == u) {
      verdict.locus = {LocusKind::Node, u, -1};
      ++roots;
    } else if (in_span(f) && orient_[f] == u && u < f) {
      verdict.locus = {LocusKind::Edge, u, f};
      ++roots;
    }
  }
  if (roots != 1) {
    verdict.locus = {};
    verdict.reason = "no unique root of the local orientations";
    return verdict;
  }
  verdict.accept = true;
  return verdict;
}

// ---- insertion update ------------------------------------------------------------------

InsertResult SplitForest::insert_vertex(const std::string& name, const std::vector<Vertex>& s) {
  const Vertex x = reserve_vertex(name);
  return insert_vertex_with_id(x, s);
}

InsertResult SplitForest::insert_vertex_with_id(Vertex x, const std::vector<Vertex>& s) {
  begin_op();
  InsertResult res;
  if (has_vertex(x)) throw std::invalid_argument("vertex " + std::to_string(x) + " already present");
  ensure_vertex_slot(x, "");
  if (auto err = validate_neighborhood(s)) {
    res.verdict.reason = *err;
    return res;
  }
  if (std::find(s.begin(), s.end(), x) != s.end()) {
    res.verdict.reason = "vertex adjacent to itself";
    return res;
  }
  res.report.vertex = x;
  if (s.empty()) {
    const ComponentId c = new_component(-1, 1);
    const TreeNodeId l = new_leaf(x, c);
    make_root(l, c);
    res.verdict.accept = true;
    res.verdict.locus.kind = LocusKind::Isolated;
    res.report.leaf = l;
    return res;
  }
  std::set<ComponentId> cs;
  for (Vertex v : s) cs.insert(component_of(v));
  if (cs.size() > 1) return insert_across_components(x, s);

  const ComponentId c = *cs.begin();
  if (comps_[c].size == 1) {
    const TreeNodeId y = comps_[c].root;
    const TreeNodeId l = new_leaf(x, c);
    attach(y, l);
    comps_[c].size = 2;
    res.verdict.accept = true;
    res.verdict.locus.kind = LocusKind::Small;
    res.report.leaf = l;
    return res;
  }
  if (comps_[c].size == 2) {
    const TreeNodeId a = comps_[c].root;
    const TreeNodeId b = nodes_[a].children.front();
    detach(b);
    const TreeNodeId u = new_node(s.size() == 2 ? NodeKind::Clique : NodeKind::Star);
    make_root(u, c);
    const TreeNodeId l = new_leaf(x, c);
    attach(u, a);
    attach(u, b);
    attach(u, l);
    if (s.size() == 1) nodes_[u].centre = leaf_of_[s[0]];
    comps_[c].size = 3;
    res.verdict.accept = true;
    res.verdict.locus.kind = LocusKind::Small;
    res.report.leaf = l;
    res.report.r = u;
    return res;
  }
  res.verdict = check_vertex_insertion(s);
  if (!res.verdict.accept) return res;
  apply_insertion(x, s, res.verdict, res.report);
  return res;
}

void SplitForest::apply_insertion(Vertex x, const std::vector<Vertex>& s, const Verdict& verdict, InsertReport& rep) {
  const ComponentId c = component_of(s.front());
  const TreeNodeId leaf = new_leaf(x, c);
  rep.leaf = leaf;
  ++comps_[c].size;

  // New ternary star on edge v-w with its centre toward v; star-joined into
  // w when w's centre faces it.
  auto hang_star = [&](TreeNodeId v, TreeNodeId w) {
    const TreeNodeId r = subdivide(v, w, NodeKind::Star);
    nodes_[r].centre = v;
    attach(r, leaf);
    rep.v = v;
    rep.w = w;
    rep.r = r;
    if (nodes_[w].kind == NodeKind::Star && nodes_[w].centre == r) {
      rep.r = *try_join(r, w);
      rep.w = rep.r;
      rep.joined = true;
    }
  };

  if (verdict.locus.kind == LocusKind::Pendant) {
    rep.update_case = 4;
    rep.root = verdict.locus.u;
    hang_star(verdict.locus.u, verdict.locus.v);
    return;
  }
  if (verdict.locus.kind == LocusKind::Edge) {
    rep.update_case = 3;
    rep.root = verdict.locus.u;
    rep.v = verdict.locus.u;
    rep.w = verdict.locus.v;
    rep.r = subdivide(verdict.locus.u, verdict.locus.v, NodeKind::Clique);
    attach(rep.r, leaf);
    return;
  }
  const TreeNodeId u = verdict.locus.u;
  rep.root = u;
  if (u != verdict.partial) {
    rep.update_case = 2;
    rep.v = u;
    attach(u, leaf);
    return;
  }
  const std::vector<TreeNodeId> a_side = span_neighbors(u);
  const int outside = degree(u) - static_cast<int>(a_side.size());
  rep.update_case = 1;
  if (nodes_[u].kind == NodeKind::Clique) {
    if (outside >= 2) {
      const TreeNodeId v = split_off(u, a_side, NodeKind::Clique);
      rep.preprocess = 'c';
      hang_star(v, u);
      return;
    }
    TreeNodeId w = -1;
    for (TreeNodeId n : neighbors(u))
      if (!in_span(n)) w = n;
    hang_star(u, w);
    return;
  }
  const TreeNodeId e = nodes_[u].centre;
  const bool e_in = in_span(e);
  if (outside - (e_in ? 0 : 1) >= 1) {
    std::vector<TreeNodeId> group;
    for (TreeNodeId n : a_side)
      if (n != e) group.push_back(n);
    const TreeNodeId v = split_off(u, group, NodeKind::Star);
    nodes_[v].centre = u;
    rep.preprocess = 's';
    if (!e_in) {
      hang_star(v, u);
    } else {
      rep.update_case = 3;
      rep.v = v;
      rep.w = u;
      rep.r = subdivide(v, u, NodeKind::Clique);
      attach(rep.r, leaf);
    }
    return;
  }
  hang_star(u, e);
}

InsertResult SplitForest::insert_across_components(Vertex x, const std::vector<Vertex>& s) {
  InsertResult res;
  res.report.vertex = x;
  std::set<ComponentId> cs;
  for (Vertex v : s) cs.insert(component_of(v));
  std::map<Vertex, std::vector<Vertex>> adj;
  for (ComponentId c : cs)
    for (Vertex v : component_vertices(c)) adj[v] = accessible_from(v);
  for (Vertex v : s) {
    adj[x].push_back(v);
    adj[v].push_back(x);
  }
  std::vector<Vertex> order;
  std::set<Vertex> seen{x};
  std::deque<Vertex> queue{x};
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (Vertex w : adj[u])
      if (seen.insert(w).second) queue.push_back(w);
  }
  auto replay = [&](SplitForest& f) {
    for (Vertex u : order) {
      std::vector<Vertex> back;
      for (Vertex w : adj[u])
        if (f.has_vertex(w)) back.push_back(w);
      f.ensure_vertex_slot(u, names_[u]);
      if (!f.insert_vertex_with_id(u, back).verdict.accept) return u;
    }
    return Vertex{-1};
  };
  SplitForest scratch;
  if (replay(scratch) >= 0) {
    res.verdict.reason = "merged component is not distance hereditary";
    return res;
  }
  for (ComponentId c : cs) {
    for (TreeNodeId u : component_nodes(c)) {
      if (nodes_[u].kind == NodeKind::Leaf) {
        leaf_of_[nodes_[u].vertex] = -1;
        --live_vertices_;
      }
      free_node(u);
    }
    comps_[c] = Component{};
  }
  replay(*this);
  begin_op();
  res.verdict.accept = true;
  res.verdict.locus.kind = LocusKind::Merge;
  res.report.rebuilt = true;
  res.report.leaf = leaf_of_[x];
  return res;
}

// ---- rewriting primitives ----------------------------------------------------------------

TreeNodeId SplitForest::subdivide(TreeNodeId a, TreeNodeId b, NodeKind k) {
  TreeNodeId child;
  if (nodes_.at(b).parent == a) {
    child = b;
  } else if (nodes_.at(a).parent == b) {
    child = a;
  } else {
    throw std::invalid_argument("subdivide needs adjacent nodes");
  }
  const TreeNodeId r = new_node(k);
  replace_slot(child, r);
  attach(r, child);
  redirect_centre(a, b, r);
  redirect_centre(b, a, r);
  return r;
}

TreeNodeId SplitForest::split_off(TreeNodeId u, const std::vector<TreeNodeId>& group, NodeKind k) {
  const TreeNodeId v = new_node(k);
  const TreeNodeId p = nodes_[u].parent;
  const bool parent_in = p >= 0 && std::find(group.begin(), group.end(), p) != group.end();
  if (parent_in) {
    replace_slot(u, v);
    attach(v, u);
  } else {
    attach(u, v);
  }
  for (TreeNodeId g : group) {
    if (parent_in && g == p) continue;
    if (nodes_[g].parent != u) throw std::invalid_argument("split_off group member is not a neighbour");
    detach(g);
    attach(v, g);
  }
  for (TreeNodeId g : group) redirect_centre(g, u, v);
  return v;
}

TreeNodeId SplitForest::merge(TreeNodeId a, TreeNodeId b) {
  if (!adjacent(a, b)) throw std::invalid_argument("merge needs adjacent nodes");
  const TreeNodeId keep = degree(a) >= degree(b) ? a : b;
  const TreeNodeId gone = keep == a ? b : a;
  std::vector<TreeNodeId> moved;
  if (nodes_[gone].parent == keep) {
    detach(gone);
  } else {
    const TreeNodeId gp = nodes_[gone].parent;
    detach(keep);
    if (gp >= 0) {
      replace_slot(gone, keep);
      moved.push_back(gp);
    } else {
      make_root(keep, nodes_[gone].comp);
    }
  }
  const std::vector<TreeNodeId> kids = nodes_[gone].children;
  for (TreeNodeId ch : kids) {
    attach(keep, ch);
    moved.push_back(ch);
  }
  for (TreeNodeId m : moved) redirect_centre(m, gone, keep);
  free_node(gone);
  touch(keep);
  return keep;
}

bool SplitForest::join_applies(TreeNodeId a, TreeNodeId b) const {
  const TreeNode& na = nodes_.at(a);
  const TreeNode& nb = nodes_.at(b);
  if (na.kind == NodeKind::Clique && nb.kind == NodeKind::Clique) return true;
  if (na.kind == NodeKind::Star && nb.kind == NodeKind::Star)
    return (na.centre == b) != (nb.centre == a);
  return false;
}

std::optional<TreeNodeId> SplitForest::try_join(TreeNodeId a, TreeNodeId b) {
  if (!join_applies(a, b)) return std::nullopt;
  const NodeKind k = nodes_[a].kind;
  TreeNodeId centre = -1;
  if (k == NodeKind::Star) centre = nodes_[a].centre == b ? nodes_[b].centre : nodes_[a].centre;
  const TreeNodeId keep = merge(a, b);
  nodes_[keep].kind = k;
  nodes_[keep].centre = centre;
  return keep;
}

std::pair<TreeNodeId, TreeNodeId> SplitForest::contract(TreeNodeId v) {
  if (nodes_.at(v).kind == NodeKind::Leaf || degree(v) != 2) throw std::invalid_argument("contract needs a degree-2 node");
  TreeNodeId a, b;
  if (nodes_[v].parent >= 0) {
    a = nodes_[v].parent;
    b = nodes_[v].children.front();
    nodes_[v].children.clear();
    replace_slot(v, b);
  } else {
    a = nodes_[v].children[0];
    b = nodes_[v].children[1];
    if (nodes_[a].kind == NodeKind::Leaf) std::swap(a, b);
    nodes_[v].children.clear();
    make_root(a, nodes_[v].comp);
    attach(a, b);
  }
  redirect_centre(a, v, b);
  redirect_centre(b, v, a);
  free_node(v);
  if (nodes_[a].kind != NodeKind::Leaf && nodes_[b].kind != NodeKind::Leaf) try_join(a, b);
  return {a, b};
}

std::vector<TreeNodeId> SplitForest::replace_region(const std::vector<TreeNodeId>& core,
                                                    const std::vector<TreeNodeId>& boundary,
                                                    const std::vector<NodeKind>& kinds,
                                                    const std::vector<std::pair<int, int>>& edges,
                                                    const std::vector<int>& centres) {
  auto in_core = [&](TreeNodeId u) { return std::find(core.begin(), core.end(), u) != core.end(); };
  TreeNodeId top = -1;
  for (TreeNodeId c : core)
    if (!in_core(nodes_.at(c).parent)) top = c;
  const TreeNodeId above = nodes_[top].parent;
  const ComponentId comp = above < 0 ? nodes_[top].comp : -1;
  std::vector<bool> faced(boundary.size(), false);
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const TreeNode& b = nodes_[boundary[i]];
    faced[i] = b.kind == NodeKind::Star && in_core(b.centre);
  }
  for (TreeNodeId c : core) {
    const std::vector<TreeNodeId> kids = nodes_[c].children;
    for (TreeNodeId ch : kids) detach(ch);
  }
  for (TreeNodeId c : core) {
    detach(c);
    free_node(c);
  }
  std::vector<TreeNodeId> made;
  for (NodeKind k : kinds) made.push_back(new_node(k));
  auto id_of = [&](int e) { return e >= 0 ? made[e] : boundary[~e]; };
  std::vector<std::vector<int>> adj(made.size());
  std::vector<int> host(boundary.size(), -1);
  for (auto [a, b] : edges) {
    if (a >= 0) adj[a].push_back(b);
    if (b >= 0) adj[b].push_back(a);
    if (a < 0) host[~a] = b;
    if (b < 0) host[~b] = a;
  }
  int start = 0;
  for (std::size_t i = 0; i < boundary.size(); ++i)
    if (boundary[i] == above) start = host[i];
  if (above >= 0) attach(above, made[start]); else make_root(made[start], comp);
  std::vector<bool> seen(made.size(), false);
  std::vector<int> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int e : adj[i]) {
      if (e >= 0) {
        if (seen[e]) continue;
        seen[e] = true;
        attach(made[i], made[e]);
        stack.push_back(e);
      } else if (boundary[~e] != above) {
        attach(made[i], boundary[~e]);
      }
    }
  }
  for (std::size_t i = 0; i < made.size(); ++i)
    if (kinds[i] == NodeKind::Star) nodes_[made[i]].centre = id_of(centres.at(i));
  for (std::size_t i = 0; i < boundary.size(); ++i)
    if (faced[i]) nodes_[boundary[i]].centre = made[host[i]];
  return made;
}

std::pair<ComponentId, ComponentId> SplitForest::cut_edge(TreeNodeId a, TreeNodeId b) {
  if (nodes_.at(b).parent != a) std::swap(a, b);
  if (nodes_.at(b).parent != a) throw std::invalid_argument("cut_edge needs adjacent nodes");
  TreeNodeId r = a;
  while (nodes_[r].parent >= 0) r = nodes_[r].parent;
  const ComponentId c = nodes_[r].comp;
  detach(b);
  const ComponentId nc = new_component(b, 0);
  int count = 0;
  relabel(b, -1, nc, &count);
  comps_[nc].size = count;
  comps_[c].size -= count;
  drop_marker_fixup(a);
  drop_marker_fixup(b);
  return {c, nc};
}

// ---- deletion ------------------------------------------------------------------------------

void SplitForest::relabel(TreeNodeId start, TreeNodeId avoid, ComponentId c, int* count) {
  std::vector<std::pair<TreeNodeId, TreeNodeId>> stack{{start, avoid}};
  while (!stack.empty()) {
    auto [u, from] = stack.back();
    stack.pop_back();
    if (nodes_[u].kind == NodeKind::Leaf) {
      nodes_[u].comp = c;
      ++*count;
    }
    for (TreeNodeId w : neighbors(u))
      if (w != from) stack.emplace_back(w, u);
  }
}

void SplitForest::drop_marker_fixup(TreeNodeId c) {
  if (nodes_[c].kind != NodeKind::Leaf && degree(c) == 2) contract(c);
}

DeleteResult SplitForest::delete_vertex(Vertex x) {
  begin_op();
  if (!has_vertex(x)) throw std::invalid_argument("unknown vertex " + std::to_string(x));
  DeleteResult res;
  const TreeNodeId l = leaf_of_[x];
  const ComponentId c = nodes_[l].comp;
  touch(l);
  leaf_of_[x] = -1;
  --live_vertices_;
  const int size = comps_[c].size;
  if (size == 1) {
    free_node(l);
    comps_[c] = Component{};
    return res;
  }
  if (size == 2) {
    const TreeNodeId other = nodes_[l].parent >= 0 ? nodes_[l].parent : nodes_[l].children.front();
    if (nodes_[l].parent >= 0) detach(l); else detach(other);
    free_node(l);
    make_root(other, c);
    comps_[c].size = 1;
    res.components.push_back(c);
    return res;
  }
  const TreeNodeId v = nodes_[l].parent;
  if (nodes_[v].kind == NodeKind::Star && nodes_[v].centre == l) {
    res.disconnected = true;
    detach(l);
    free_node(l);
    const TreeNodeId p = nodes_[v].parent;
    std::vector<TreeNodeId> pieces = nodes_[v].children;
    if (p >= 0) detach(v);
    for (TreeNodeId ch : pieces) {
      nodes_[ch].parent = -1;
      nodes_[ch].pos = -1;
    }
    nodes_[v].children.clear();
    free_node(v);
    int others = 0;
    std::vector<TreeNodeId> heads;
    if (p >= 0) {
      res.components.push_back(c);
      heads.push_back(p);
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const TreeNodeId h = pieces[i];
      if (p < 0 && i == 0) {
        make_root(h, c);
        res.components.push_back(c);
        heads.push_back(h);
        continue;
      }
      const ComponentId nc = new_component(h, 0);
      int count = 0;
      relabel(h, -1, nc, &count);
      comps_[nc].size = count;
      others += count;
      res.components.push_back(nc);
      heads.push_back(h);
    }
    comps_[c].size = size - 1 - others;
    for (TreeNodeId h : heads) drop_marker_fixup(h);
    return res;
  }
  detach(l);
  free_node(l);
  comps_[c].size = size - 1;
  res.components.push_back(c);
  drop_marker_fixup(v);
  return res;
}

// ---- checks and export ---------------------------------------------------------------------

std::string SplitForest::check_invariants() const {
  std::ostringstream err;
  int seen_leaves = 0;
  for (ComponentId c : components()) {
    const Component& comp = comps_[c];
    const TreeNodeId root = comp.root;
    if (root < 0 || !nodes_[root].alive || nodes_[root].parent >= 0) {
      err << "component " << c << " has a bad root";
      return err.str();
    }
    if (comp.size >= 3 && nodes_[root].kind == NodeKind::Leaf) err << "component " << c << " rooted at a leaf; ";
    int leaves = 0, internal = 0;
    for (TreeNodeId u : component_nodes(c)) {
      const TreeNode& n = nodes_[u];
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        const TreeNode& ch = nodes_[n.children[i]];
        if (ch.parent != u || ch.pos != static_cast<int>(i)) err << "child link of " << u << " broken; ";
      }
      if (n.kind == NodeKind::Leaf) {
        ++leaves;
        if (n.comp != c) err << "leaf " << u << " has stale component; ";
        if (leaf_of_.at(n.vertex) != u) err << "leaf " << u << " not registered; ";
        if (comp.size >= 2 && degree(u) != 1) err << "leaf " << u << " has degree " << degree(u) << "; ";
        continue;
      }
      ++internal;
      if (degree(u) < 3) err << "node " << u << " has degree " << degree(u) << "; ";
      if (n.kind == NodeKind::Star && !adjacent(u, n.centre)) err << "star " << u << " centre is not a neighbour; ";
      for (TreeNodeId w : n.children)
        if (nodes_[w].kind != NodeKind::Leaf && join_applies(u, w)) err << "join applies on " << u << "-" << w << "; ";
    }
    if (leaves != comp.size) err << "component " << c << " size " << comp.size << " but " << leaves << " leaves; ";
    if (leaves + internal > 2 * leaves) err << "component " << c << " has too many nodes; ";
    seen_leaves += leaves;
  }
  if (seen_leaves != live_vertices_) err << "vertex count mismatch; ";
  return err.str();
}

void SplitForest::write_text(std::ostream& out) const {
  for (ComponentId c : components()) {
    out << "component " << c << " size " << comps_[c].size << " root " << comps_[c].root << '\n';
    auto nodes = component_nodes(c);
    std::sort(nodes.begin(), nodes.end());
    for (TreeNodeId u : nodes) {
      const TreeNode& n = nodes_[u];
      if (n.kind == NodeKind::Leaf) {
        out << "  leaf " << u << ' ' << names_[n.vertex] << " parent " << n.parent << '\n';
      } else {
        out << "  node " << u << ' ' << to_string(n.kind) << " degree " << degree(u);
        if (n.kind == NodeKind::Star) out << " centre " << n.centre;
        out << " parent " << n.parent << '\n';
      }
    }
  }
}

void SplitForest::write_dot(std::ostream& out) const {
  out << "graph split_tree {\n";
  for (ComponentId c : components()) {
    auto nodes = component_nodes(c);
    std::sort(nodes.begin(), nodes.end());
    for (TreeNodeId u : nodes) {
      const TreeNode& n = nodes_[u];
      if (n.kind == NodeKind::Leaf) {
        out << "  n" << u << " [shape=box,label=\"" << names_[n.vertex] << "\"];\n";
      } else {
        out << "  n" << u << " [shape=circle,label=\"" << (n.kind == NodeKind::Clique ? "K" : "S") << "\"];\n";
      }
      if (n.parent >= 0) {
        out << "  n" << n.parent << " -- n" << u;
        const TreeNode& p = nodes_[n.parent];
        if (p.kind == NodeKind::Star && p.centre == u) out << " [taillabel=\"c\"]";
        else if (n.kind == NodeKind::Star && n.centre == n.parent) out << " [headlabel=\"c\"]";
        out << ";\n";
      }
    }
  }
  out << "}\n";
}

// ---- static construction ----------------------------------------------------------------------

namespace {

std::optional<Vertex> grow_component(SplitForest& f, const Graph& g, Vertex start) {
  for (Vertex x : bfs_order(g, start)) {
    std::vector<Vertex> back;
    for (Vertex w : g.neighbors(x))
      if (f.has_vertex(w)) back.push_back(w);
    if (!f.insert_vertex_with_id(x, back).verdict.accept) return x;
  }
  return std::nullopt;
}

SplitForest empty_forest_for(const Graph& g) {
  SplitForest f;
  for (Vertex v : g.vertices()) f.reserve_vertex(g.name(v));
  return f;
}

}  // namespace

std::optional<SplitForest> build_incremental(const Graph& g, Vertex* failed) {
  if (g.vertex_count() == 0 || !is_connected(g)) throw std::invalid_argument("build_incremental needs a connected graph");
  return build_forest(g, failed);
}

std::optional<SplitForest> build_forest(const Graph& g, Vertex* failed) {
  if (g.vertex_count() != g.slot_count()) throw std::invalid_argument("graph has removed vertex slots; compact it first");
  SplitForest f = empty_forest_for(g);
  for (const auto& comp : connected_components(g)) {
    if (auto bad = grow_component(f, g, comp.front())) {
      if (failed) *failed = *bad;
      return std::nullopt;
    }
  }
  return f;
}

}  // namespace splitdh
