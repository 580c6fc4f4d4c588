#include "splitdh/class_dynamic.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace splitdh {

namespace {

bool is_star(const SplitForest& f, TreeNodeId u) { return f.node(u).kind == NodeKind::Star; }
bool is_clique(const SplitForest& f, TreeNodeId u) { return f.node(u).kind == NodeKind::Clique; }
bool is_leaf(const SplitForest& f, TreeNodeId u) { return f.node(u).kind == NodeKind::Leaf; }
bool alive(const SplitForest& f, TreeNodeId u) {
  return u >= 0 && u < f.node_slots() && f.node(u).alive;
}

// Tree-root of a component with at most two vertices.
TreeRoot small_root(const SplitForest& f, ComponentId c) {
  const TreeNodeId r = f.component_root(c);
  if (f.component_size(c) == 1) return {r, -1};
  return {r, f.node(r).children.front()};
}

// Checks whether candidate `cand` is the tree-root, knowing that every star
// outside `seeds` and off the path from `ref` to `cand` is oriented toward
// `ref`.
bool candidate_valid(const SplitForest& f, const std::vector<TreeNodeId>& ref, const TreeRoot& cand,
                     const std::vector<TreeNodeId>& seeds) {
  if (cand.is_edge()) {
    for (auto [p, q] : {std::pair{cand.a, cand.b}, std::pair{cand.b, cand.a}}) {
      if (is_clique(f, p)) return false;
      if (is_star(f, p) && f.node(p).centre != q) return false;
    }
  } else if (!is_clique(f, cand.a)) {
    return false;
  }
  const std::vector<TreeNodeId> path = tree_path(f, ref.front(), cand.a);
  auto oriented = [&](TreeNodeId q, TreeNodeId hop) {
    if (cand.contains(q)) return true;  // endpoint centres were checked above
    return f.node(q).centre == hop;
  };
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (is_star(f, path[i]) && !oriented(path[i], path[i + 1])) return false;
  std::vector<TreeNodeId> extra = seeds;
  extra.insert(extra.end(), ref.begin(), ref.end());
  for (TreeNodeId q : extra) {
    if (!is_star(f, q) || cand.contains(q)) continue;
    const std::vector<TreeNodeId> p = tree_path(f, q, cand.a);
    if (!oriented(q, p[1])) return false;
  }
  return true;
}

// Tree-root among the nodes near `seeds`; `ref` is a node or tree edge that
// every unchanged star is oriented toward.
}  // namespace

std::optional<TreeRoot> local_tree_root(const SplitForest& f, std::vector<TreeNodeId> ref, std::vector<TreeNodeId> seeds) {
  auto keep_alive = [&](std::vector<TreeNodeId>& xs) {
    std::vector<TreeNodeId> out;
    for (TreeNodeId u : xs)
      if (alive(f, u) && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    xs = out;
  };
  keep_alive(ref);
  keep_alive(seeds);
  if (ref.empty()) return std::nullopt;
  std::vector<TreeNodeId> pool = seeds;
  pool.insert(pool.end(), ref.begin(), ref.end());
  std::vector<TreeRoot> cliques, edges;
  for (TreeNodeId u : pool) {
    const TreeNode& n = f.node(u);
    if (n.kind == NodeKind::Clique) {
      cliques.push_back({u, -1});
    } else if (n.kind == NodeKind::Star) {
      edges.push_back({u, n.centre});
    } else if (n.parent >= 0 && is_star(f, n.parent) && f.node(n.parent).centre == u) {
      edges.push_back({n.parent, u});
    }
  }
  for (const auto* list : {&cliques, &edges})
    for (const TreeRoot& cand : *list)
      if (candidate_valid(f, ref, cand, seeds)) return cand;
  return std::nullopt;
}

namespace {

std::vector<TreeNodeId> root_nodes(const TreeRoot& r) {
  std::vector<TreeNodeId> out{r.a};
  if (r.is_edge()) out.push_back(r.b);
  return out;
}

TreeRoot require_cograph(const SplitForest& f, ComponentId c, const std::optional<TreeRoot>& root) {
  if (root) return *root;
  auto r = is_cograph_tree(f, c);
  if (!r) throw std::invalid_argument("component is not a cograph");
  return *r;
}

std::optional<ComponentId> single_component(const SplitForest& f, const std::vector<Vertex>& s) {
  ComponentId c = f.component_of(s.front());
  for (Vertex v : s)
    if (f.component_of(v) != c) return std::nullopt;
  return c;
}

bool valid_neighbourhood(const SplitForest& f, const std::vector<Vertex>& s, std::string& reason) {
  std::vector<Vertex> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    reason = "duplicate vertex in neighbourhood";
    return false;
  }
  for (Vertex v : s)
    if (!f.has_vertex(v)) {
      reason = "unknown vertex " + std::to_string(v) + " in neighbourhood";
      return false;
    }
  return true;
}

// Inserts into a copy and keeps it when `in_class` holds for the result.
template <class Pred>
ClassInsertResult insert_on_copy(SplitForest& f, const std::string& name, const std::vector<Vertex>& s, Pred in_class,
                                 const char* reject) {
  ClassInsertResult out;
  SplitForest copy = f;
  InsertResult res = copy.insert_vertex(name, s);
  out.report = res.report;
  out.dh_accept = res.verdict.accept;
  if (!res.verdict.accept) {
    out.reason = res.verdict.reason;
    return out;
  }
  const ComponentId c = copy.component_of(res.report.vertex);
  if (!in_class(copy, c, out)) {
    out.reason = reject;
    return out;
  }
  f = std::move(copy);
  out.accept = true;
  return out;
}

// The partially accessible node of an accepted insertion with the
// neighbours it keeps inside T(S).
struct PartialSide {
  TreeNodeId u = -1;
  std::vector<TreeNodeId> inside;
  int outside = 0;
};

PartialSide partial_side(SplitForest& f, const std::vector<Vertex>& s, TreeNodeId u) {
  PartialSide out;
  out.u = u;
  const SpanView view = f.spanning_subtree(s);
  for (TreeNodeId n : view.nodes)
    if (n != u && (f.node(n).parent == u || f.node(u).parent == n)) out.inside.push_back(n);
  out.outside = f.degree(u) - static_cast<int>(out.inside.size());
  return out;
}

bool contains(const std::vector<TreeNodeId>& xs, TreeNodeId u) {
  return std::find(xs.begin(), xs.end(), u) != xs.end();
}

// Cograph test for an accepted DH insertion with |S| >= 2.  The new star
// created by the update must be oriented toward the tree-root together with
// every star it redirects.
bool cograph_rule(SplitForest& f, const std::vector<Vertex>& s, const Verdict& verdict, const TreeRoot& r,
                  std::string& reason) {
  if (verdict.locus.kind == LocusKind::Edge || verdict.partial < 0) return true;
  const PartialSide side = partial_side(f, s, verdict.partial);
  const TreeNodeId u = side.u;
  if (is_clique(f, u)) {
    if (r == TreeRoot{u, -1}) return true;
    for (TreeNodeId n : side.inside)
      if (is_star(f, n) && f.node(n).centre != u) return true;
    reason = "tree-root lies outside the spanning subtree at a clique";
    return false;
  }
  const TreeNodeId e = f.node(u).centre;
  const bool e_in = contains(side.inside, e);
  if (side.outside - (e_in ? 0 : 1) >= 1) {
    if (e_in) return true;
    reason = "split star would face away from the tree-root";
    return false;
  }
  if (r == TreeRoot{e, -1} || r == TreeRoot{u, e}) return true;
  reason = "tree-root is not at the centre edge of the partial star";
  return false;
}

// 3-leaf power test for an accepted DH insertion with |S| >= 2: the update
// must keep the star nodes connected and every star centre on a leaf or
// clique.
bool tlp_rule(SplitForest& f, const std::vector<Vertex>& s, const Verdict& verdict, ComponentId c,
              std::string& reason) {
  if (verdict.locus.kind == LocusKind::Edge) {
    if (is_star(f, verdict.locus.u) && is_star(f, verdict.locus.v)) {
      reason = "new clique would separate two stars";
      return false;
    }
    return true;
  }
  if (verdict.partial < 0) return true;
  const PartialSide side = partial_side(f, s, verdict.partial);
  const TreeNodeId u = side.u;
  if (is_star(f, u)) {
    reason = "partial star would get a star centre";
    return false;
  }
  if (f.degree(u) == f.component_size(c)) return true;  // u is the only internal node
  if (side.outside == 1) {
    for (TreeNodeId n : f.neighbors(u))
      if (!contains(side.inside, n)) {
        if (is_star(f, n)) return true;
        break;
      }
  }
  reason = "new star would be cut off from the other stars";
  return false;
}

// AHU code of the tree rooted at `root`.
std::string rooted_code(const SplitForest& f, TreeNodeId root) {
  std::vector<std::pair<TreeNodeId, TreeNodeId>> order;  // (node, parent)
  std::vector<std::pair<TreeNodeId, TreeNodeId>> stack{{root, -1}};
  while (!stack.empty()) {
    auto [u, p] = stack.back();
    stack.pop_back();
    order.emplace_back(u, p);
    for (TreeNodeId w : f.neighbors(u))
      if (w != p) stack.emplace_back(w, u);
  }
  std::unordered_map<TreeNodeId, std::string> code;
  std::unordered_map<TreeNodeId, std::vector<TreeNodeId>> kids;
  for (auto [u, p] : order)
    if (p >= 0) kids[p].push_back(u);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto [u, p] = *it;
    const TreeNode& n = f.node(u);
    std::vector<std::string> parts;
    std::string centre_code;
    for (TreeNodeId ch : kids[u]) {
      if (n.kind == NodeKind::Star && n.centre == ch)
        centre_code = std::move(code[ch]);
      else
        parts.push_back(std::move(code[ch]));
      code.erase(ch);
    }
    std::sort(parts.begin(), parts.end());
    std::string body;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) body += ',';
      body += parts[i];
    }
    switch (n.kind) {
      case NodeKind::Leaf:
        code[u] = body.empty() ? "L" : "L(" + body + ")";
        break;
      case NodeKind::Clique:
        code[u] = "K(" + body + ")";
        break;
      case NodeKind::Star:
        code[u] = n.centre == p ? "S^(" + body + ")" : "S(*" + centre_code + ";" + body + ")";
        break;
    }
  }
  return code[root];
}

}  // namespace

std::vector<TreeNodeId> tree_path(const SplitForest& f, TreeNodeId a, TreeNodeId b) {
  std::vector<TreeNodeId> pa{a}, pb{b};
  std::unordered_map<TreeNodeId, std::size_t> ia{{a, 0}}, ib{{b, 0}};
  auto join = [&](std::size_t i, std::size_t j) {
    std::vector<TreeNodeId> out(pa.begin(), pa.begin() + static_cast<long>(i) + 1);
    for (std::size_t k = j; k-- > 0;) out.push_back(pb[k]);
    return out;
  };
  if (a == b) return {a};
  while (true) {
    bool moved = false;
    const TreeNodeId ua = f.node(pa.back()).parent;
    if (ua >= 0) {
      moved = true;
      if (auto it = ib.find(ua); it != ib.end()) {
        pa.push_back(ua);
        return join(pa.size() - 1, it->second);
      }
      ia.emplace(ua, pa.size());
      pa.push_back(ua);
    }
    const TreeNodeId ub = f.node(pb.back()).parent;
    if (ub >= 0) {
      moved = true;
      if (auto it = ia.find(ub); it != ia.end()) {
        pb.push_back(ub);
        return join(it->second, pb.size() - 1);
      }
      ib.emplace(ub, pb.size());
      pb.push_back(ub);
    }
    if (!moved) throw std::invalid_argument("tree_path: nodes lie in different trees");
  }
}

std::optional<TreeRoot> is_cograph_tree(const SplitForest& f, ComponentId c) {
  if (f.component_size(c) <= 2) return small_root(f, c);
  const TreeNodeId root = f.component_root(c);
  // Euler intervals, then a difference array counting for each node the
  // stars oriented toward it.
  std::unordered_map<TreeNodeId, int> tin, tout;
  std::vector<TreeNodeId> order;
  std::vector<std::pair<TreeNodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [u, done] = stack.back();
    stack.pop_back();
    if (done) {
      tout[u] = static_cast<int>(order.size()) - 1;
      continue;
    }
    tin[u] = static_cast<int>(order.size());
    order.push_back(u);
    stack.emplace_back(u, true);
    for (TreeNodeId ch : f.node(u).children) stack.emplace_back(ch, false);
  }
  const int n = static_cast<int>(order.size());
  std::vector<int> diff(n + 1, 0);
  int stars = 0;
  for (TreeNodeId u : order) {
    const TreeNode& nd = f.node(u);
    if (nd.kind != NodeKind::Star) continue;
    ++stars;
    if (nd.centre == nd.parent) {
      diff[0] += 1;
      diff[n] -= 1;
      diff[tin[u]] -= 1;
      diff[tout[u] + 1] += 1;
    } else {
      diff[tin[nd.centre]] += 1;
      diff[tout[nd.centre] + 1] -= 1;
    }
  }
  std::vector<int> count(n);
  for (int i = 0, run = 0; i < n; ++i) count[i] = run += diff[i];
  for (TreeNodeId u : order)
    if (is_clique(f, u) && count[tin[u]] == stars) return TreeRoot{u, -1};
  for (TreeNodeId u : order) {
    if (!is_star(f, u) || count[tin[u]] != stars - 1) continue;
    const TreeNodeId t = f.node(u).centre;
    if (is_leaf(f, t) || (is_star(f, t) && f.node(t).centre == u)) return TreeRoot{u, t};
  }
  return std::nullopt;
}

bool is_3lp_tree(const SplitForest& f, ComponentId c) {
  if (f.component_size(c) <= 2) return true;
  int stars = 0, star_edges = 0;
  for (TreeNodeId u : f.component_nodes(c)) {
    const TreeNode& n = f.node(u);
    if (n.kind != NodeKind::Star) continue;
    ++stars;
    if (n.parent >= 0 && is_star(f, n.parent)) ++star_edges;
    if (is_star(f, n.centre)) return false;
  }
  return stars == 0 || star_edges == stars - 1;
}

ClassInsertResult cograph_insert_vertex(SplitForest& f, const std::optional<TreeRoot>& root,
                                        const std::string& name, const std::vector<Vertex>& s) {
  ClassInsertResult out;
  if (!valid_neighbourhood(f, s, out.reason)) return out;
  if (s.empty()) {
    InsertResult res = f.insert_vertex(name, s);
    out.accept = out.dh_accept = true;
    out.report = res.report;
    out.root = TreeRoot{res.report.leaf, -1};
    return out;
  }
  const auto comp = single_component(f, s);
  if (!comp) {
    return insert_on_copy(
        f, name, s,
        [](const SplitForest& g, ComponentId c, ClassInsertResult& o) {
          o.root = is_cograph_tree(g, c);
          return o.root.has_value();
        },
        "merged component is not a cograph");
  }
  const ComponentId c = *comp;
  const TreeRoot r = require_cograph(f, c, root);
  if (f.component_size(c) <= 2) {
    InsertResult res = f.insert_vertex(name, s);
    out.accept = out.dh_accept = true;
    out.report = res.report;
    out.root = is_cograph_tree(f, c);
    return out;
  }
  if (s.size() == 1) {
    // A pendant keeps the graph P4-free exactly when its neighbour is universal.
    out.dh_accept = true;
    const TreeNodeId y = f.leaf_of(s.front());
    const TreeNodeId w = f.node(y).parent;
    const bool universal = (r == TreeRoot{w, -1} && is_clique(f, w)) || r == TreeRoot{w, y};
    if (!universal) {
      out.reason = "pendant vertex on a non-universal vertex";
      return out;
    }
  } else {
    const Verdict verdict = f.check_vertex_insertion(s);
    out.dh_accept = verdict.accept;
    if (!verdict.accept) {
      out.reason = verdict.reason;
      return out;
    }
    if (!cograph_rule(f, s, verdict, r, out.reason)) return out;
  }
  InsertResult res = f.insert_vertex(name, s);
  if (!res.verdict.accept) throw std::logic_error("cograph insertion rejected after a positive check");
  out.accept = true;
  out.report = res.report;
  const InsertReport& rep = res.report;
  std::vector<TreeNodeId> ref;
  for (TreeNodeId q : root_nodes(r)) ref.push_back(alive(f, q) ? q : rep.r);
  out.root = local_tree_root(f, ref, {rep.v, rep.w, rep.r, rep.root, rep.leaf});
  if (!out.root) {
    out.root_fallback = true;
    out.root = is_cograph_tree(f, c);
  }
  return out;
}

ClassInsertResult tlp_insert_vertex(SplitForest& f, const std::string& name, const std::vector<Vertex>& s) {
  ClassInsertResult out;
  if (!valid_neighbourhood(f, s, out.reason)) return out;
  const auto comp = s.empty() ? std::optional<ComponentId>{} : single_component(f, s);
  if (!s.empty() && !comp) {
    return insert_on_copy(
        f, name, s, [](const SplitForest& g, ComponentId c, ClassInsertResult&) { return is_3lp_tree(g, c); },
        "merged component is not 3-leaf power");
  }
  if (!s.empty() && f.component_size(*comp) > 2) {
    const ComponentId c = *comp;
    if (s.size() == 1) {
      out.dh_accept = true;
      const TreeNodeId w = f.node(f.leaf_of(s.front())).parent;
      // The new star is adjacent to w only, so it joins the star subtree
      // when w is a star or when there are no other stars.
      if (!is_star(f, w) && f.degree(w) != f.component_size(c)) {
        out.reason = "pendant vertex would disconnect the star nodes";
        return out;
      }
    } else {
      const Verdict verdict = f.check_vertex_insertion(s);
      out.dh_accept = verdict.accept;
      if (!verdict.accept) {
        out.reason = verdict.reason;
        return out;
      }
      if (!tlp_rule(f, s, verdict, c, out.reason)) return out;
    }
  }
  InsertResult res = f.insert_vertex(name, s);
  if (!res.verdict.accept) throw std::logic_error("3-leaf power insertion rejected after a positive check");
  out.accept = out.dh_accept = true;
  out.report = res.report;
  return out;
}

ClassDeleteResult delete_vertex_class(SplitForest& f, Vertex x, const std::string& cls,
                                      const std::optional<TreeRoot>& root) {
  ClassDeleteResult out;
  if (cls != "cograph") {
    out.deletion = f.delete_vertex(x);
    return out;
  }
  if (!f.has_vertex(x)) throw std::invalid_argument("unknown vertex " + std::to_string(x));
  const ComponentId c = f.component_of(x);
  const TreeRoot r = require_cograph(f, c, root);
  const TreeNodeId l = f.leaf_of(x);
  const TreeNodeId v = f.node(l).parent;
  const bool small = f.component_size(c) <= 3;
  const bool splits = !small && is_star(f, v) && f.node(v).centre == l;
  if (small || splits) {
    out.deletion = f.delete_vertex(x);
    for (ComponentId k : out.deletion.components) {
      auto rk = is_cograph_tree(f, k);
      if (!rk) throw std::logic_error("induced subgraph of a cograph is not a cograph");
      out.roots.emplace_back(k, *rk);
    }
    return out;
  }
  std::vector<TreeNodeId> around;
  for (TreeNodeId w : f.neighbors(v))
    if (w != l) around.push_back(w);
  out.deletion = f.delete_vertex(x);
  if (alive(f, v)) {
    out.roots.emplace_back(c, r);
    return out;
  }
  // v was contracted onto the edge between its two remaining neighbours.
  std::vector<TreeNodeId> ref;
  auto survivor = [&](TreeNodeId q) {
    if (alive(f, q)) return q;
    for (TreeNodeId a : around)
      if (alive(f, a)) return a;
    return TreeNodeId{-1};
  };
  if (r.contains(v)) {
    for (TreeNodeId a : around) ref.push_back(survivor(a));
  } else {
    for (TreeNodeId q : root_nodes(r)) ref.push_back(survivor(q));
  }
  auto rr = local_tree_root(f, ref, around);
  if (!rr) {
    out.root_fallback = true;
    rr = is_cograph_tree(f, c);
  }
  if (!rr) throw std::logic_error("induced subgraph of a cograph is not a cograph");
  out.roots.emplace_back(c, *rr);
  return out;
}

std::string canonical_code(const SplitForest& f, ComponentId c) {
  if (f.component_size(c) == 1) return "V";
  if (f.component_size(c) == 2) return "E";
  // Peel leaves layer by layer to find the centre of the tree.
  const std::vector<TreeNodeId> nodes = f.component_nodes(c);
  std::unordered_map<TreeNodeId, int> deg;
  std::vector<TreeNodeId> layer;
  for (TreeNodeId u : nodes) {
    deg[u] = f.degree(u);
    if (deg[u] <= 1) layer.push_back(u);
  }
  std::size_t remaining = nodes.size();
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<TreeNodeId> next;
    for (TreeNodeId u : layer)
      for (TreeNodeId w : f.neighbors(u))
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::string best;
  for (TreeNodeId centre : layer) {
    std::string code = rooted_code(f, centre);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

bool isomorphic_dh(const Graph& g1, const Graph& g2) {
  if (g1.vertex_count() == 0 || g2.vertex_count() == 0) return g1.vertex_count() == g2.vertex_count();
  auto f1 = build_incremental(g1);
  auto f2 = build_incremental(g2);
  if (!f1 || !f2) throw std::invalid_argument("graph is not distance hereditary");
  if (g1.vertex_count() != g2.vertex_count()) return false;
  return canonical_code(*f1, f1->components().front()) == canonical_code(*f2, f2->components().front());
}

}  // namespace splitdh
