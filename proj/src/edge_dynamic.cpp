#include "splitdh/edge_dynamic.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace splitdh {

// ---- words -------------------------------------------------------------------------------

std::string word_string(const Word& w) {
  std::string out;
  for (Letter l : w) {
    switch (l) {
      case Letter::K: out += "K"; break;
      case Letter::S: out += "S"; break;
      case Letter::Sx: out += "Sx"; break;
      case Letter::Sy: out += "Sy"; break;
    }
  }
  return out;
}

Word parse_word(const std::string& s) {
  Word w;
  if (s == "-") return w;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'K') {
      w.push_back(Letter::K);
    } else if (s[i] == 'S') {
      if (i + 1 < s.size() && s[i + 1] == 'x') {
        w.push_back(Letter::Sx);
        ++i;
      } else if (i + 1 < s.size() && s[i + 1] == 'y') {
        w.push_back(Letter::Sy);
        ++i;
      } else {
        w.push_back(Letter::S);
      }
    } else {
      throw std::invalid_argument("bad letter in word '" + s + "'");
    }
  }
  return w;
}

bool is_reduced_word(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Letter a = w[i], b = w[i + 1];
    if ((a == Letter::K && b == Letter::K) || (a == Letter::Sx && b == Letter::Sx) ||
        (a == Letter::Sy && b == Letter::Sy) || (a == Letter::Sy && b == Letter::S) ||
        (a == Letter::S && b == Letter::Sx))
      return false;
  }
  return true;
}

bool has_letter_s(const Word& w) { return std::find(w.begin(), w.end(), Letter::S) != w.end(); }

const char* to_string(EdgeMode m) { return m == EdgeMode::Insert ? "insert" : "delete"; }

PathWord path_word(const SplitForest& f, Vertex x, Vertex y) {
  if (!f.has_vertex(x) || !f.has_vertex(y)) throw std::invalid_argument("unknown vertex");
  if (x == y) throw std::invalid_argument("path word needs two distinct vertices");
  PathWord pw;
  pw.leaf_x = f.leaf_of(x);
  pw.leaf_y = f.leaf_of(y);
  if (f.component_of(x) != f.component_of(y)) {
    pw.same_component = false;
    return pw;
  }
  constexpr int kClimb = 6;
  auto chain = [&](TreeNodeId l) {
    std::vector<TreeNodeId> c{l};
    while (static_cast<int>(c.size()) < kClimb && f.node(c.back()).parent >= 0) c.push_back(f.node(c.back()).parent);
    for (TreeNodeId u : c) f.touch(u);
    return c;
  };
  const std::vector<TreeNodeId> a = chain(pw.leaf_x);
  const std::vector<TreeNodeId> b = chain(pw.leaf_y);
  std::vector<TreeNodeId> path;
  for (std::size_t i = 0; i < a.size() && path.empty(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (a[i] == b[j]) {
        path.assign(a.begin(), a.begin() + static_cast<long>(i) + 1);
        for (std::size_t k = j; k-- > 0;) path.push_back(b[k]);
        break;
      }
  if (path.empty() || path.size() > 6) {
    pw.truncated = true;
    return pw;
  }
  pw.nodes.assign(path.begin() + 1, path.end() - 1);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const TreeNode& n = f.node(path[i]);
    if (n.kind == NodeKind::Clique)
      pw.letters.push_back(Letter::K);
    else if (n.centre == path[i - 1])
      pw.letters.push_back(Letter::Sx);
    else if (n.centre == path[i + 1])
      pw.letters.push_back(Letter::Sy);
    else
      pw.letters.push_back(Letter::S);
  }
  return pw;
}

// ---- tables ------------------------------------------------------------------------------

namespace {

constexpr const char* kNoWord = "#";

struct RowMatch {
  int row = -1;
  int lead = 0;      // 1 when the word starts with an extreme Sx
  int core_len = 0;  // letters after the extreme prefix that get rewritten
};

RowMatch match_row(const WordVerdictTable& t, const Word& w, EdgeMode mode) {
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const TableRow& r = t.rows[i];
    const std::string& side = mode == EdgeMode::Insert ? r.insert_core : r.delete_core;
    if (side == kNoWord) continue;
    const Word core = parse_word(side);
    for (int lead = 0; lead <= (r.lead_sx ? 1 : 0); ++lead)
      for (int trail = 0; trail <= (r.trail_sy ? 1 : 0); ++trail) {
        Word cand;
        if (lead) cand.push_back(Letter::Sx);
        cand.insert(cand.end(), core.begin(), core.end());
        if (trail) cand.push_back(Letter::Sy);
        if (cand == w) return {static_cast<int>(i), lead, static_cast<int>(core.size())};
      }
  }
  return {};
}

void all_words(int max_len, const std::function<void(const Word&)>& fn) {
  Word w;
  std::function<void()> rec = [&]() {
    fn(w);
    if (static_cast<int>(w.size()) == max_len) return;
    for (Letter l : {Letter::K, Letter::S, Letter::Sx, Letter::Sy}) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

}  // namespace

int WordVerdictTable::match(const Word& w, EdgeMode mode) const { return match_row(*this, w, mode).row; }

std::vector<Word> WordVerdictTable::words(EdgeMode mode, int max_len) const {
  std::vector<Word> out;
  all_words(max_len, [&](const Word& w) {
    if (match(w, mode) >= 0) out.push_back(w);
  });
  return out;
}

const WordVerdictTable& dh_table() {
  static const WordVerdictTable t{"dh",
                                  {{"SS", "SySx"}, {"SK", "SyK"}, {"KS", "KSx"}, {"S", "K"}, {kNoWord, ""}}};
  return t;
}

const WordVerdictTable& cograph_table() {
  static const WordVerdictTable t{
      "cograph", {{"S", "K", false, false}, {"SK", "SyK", false, false}, {"KS", "KSx", false, false}}};
  return t;
}

const WordVerdictTable& tlp_table() {
  static const WordVerdictTable t{"3lp",
                                  {{"SK", "SyK", true, false},
                                   {"KS", "KSx", false, true},
                                   {"S", "K", true, false},
                                   {"S", "K", false, true}}};
  return t;
}

// ---- rewriting ---------------------------------------------------------------------------

namespace {

struct Rewrite {
  std::vector<TreeNodeId> made;        // nodes replacing the core
  std::vector<TreeNodeId> boundary;    // neighbours of the core
  std::vector<TreeNodeId> remainders;  // what stays of split core nodes
  std::vector<TreeNodeId> keeps;       // survivors of the final joins
};

bool label_adjacent(const SplitForest& f, TreeNodeId u, TreeNodeId a, TreeNodeId b) {
  const TreeNode& n = f.node(u);
  return n.kind == NodeKind::Clique || n.centre == a || n.centre == b;
}

// Reduced split tree of the 3- or 4-vertex marker graph h, in the encoding
// of SplitForest::replace_region.
void decompose_markers(const std::vector<std::vector<bool>>& h, std::vector<NodeKind>& kinds,
                       std::vector<std::pair<int, int>>& edges, std::vector<int>& centres) {
  const int m = static_cast<int>(h.size());
  // A ternary node on (p, q, r): clique, or star with the common vertex as centre.
  auto ternary = [&](std::array<int, 3> v, std::array<bool, 3> e /* 01, 02, 12 */) {
    const int count = e[0] + e[1] + e[2];
    if (count < 2) throw std::logic_error("marker graph is disconnected");
    if (count == 3) {
      kinds.push_back(NodeKind::Clique);
      centres.push_back(-1);
      return;
    }
    kinds.push_back(NodeKind::Star);
    centres.push_back(!e[2] ? v[0] : !e[1] ? v[1] : v[2]);
  };
  if (m == 3) {
    ternary({~0, ~1, ~2}, {h[0][1], h[0][2], h[1][2]});
    for (int i = 0; i < 3; ++i) edges.emplace_back(0, ~i);
    return;
  }
  const std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  for (const auto& pr : pairings) {
    const int p = pr[0], q = pr[1], r = pr[2], s = pr[3];
    const bool pn = h[p][r] || h[p][s];
    const bool qn = h[q][r] || h[q][s];
    if (!pn && !qn) continue;
    if (pn && qn && (h[p][r] != h[q][r] || h[p][s] != h[q][s])) continue;
    const bool rn = h[r][p] || h[r][q];
    const bool sn = h[s][p] || h[s][q];
    ternary({~p, ~q, 1}, {h[p][q], pn, qn});
    ternary({~r, ~s, 0}, {h[r][s], rn, sn});
    edges = {{0, ~p}, {0, ~q}, {1, ~r}, {1, ~s}, {0, 1}};
    return;
  }
  throw std::logic_error("marker graph is prime");
}

// Rewrites the core letters [lead, lead + len) of the path word by toggling
// the x-y adjacency in the label of the joined core.
Rewrite rewrite_core(SplitForest& f, const PathWord& pw, int lead, int len) {
  Rewrite rw;
  std::vector<TreeNodeId> full{pw.leaf_x};
  full.insert(full.end(), pw.nodes.begin(), pw.nodes.end());
  full.push_back(pw.leaf_y);
  const int s = lead + 1;
  const int e = lead + len;  // inclusive indices into `full`
  std::vector<TreeNodeId> core;
  for (int k = s; k <= e; ++k) {
    const TreeNodeId u = full[k];
    if (f.degree(u) > 3) {
      const TreeNodeId prev = full[k - 1], next = full[k + 1];
      const TreeNode before = f.node(u);
      const TreeNodeId v = f.split_off(u, {prev, next}, before.kind);
      if (before.kind == NodeKind::Star) {
        if (before.centre == prev || before.centre == next) {
          f.set_centre(v, before.centre);
          f.set_centre(u, v);
        } else {
          f.set_centre(v, u);
        }
      }
      full[k] = v;
      rw.remainders.push_back(u);
    }
    core.push_back(full[k]);
  }
  std::vector<TreeNodeId> owner;
  rw.boundary.push_back(full[s - 1]);
  owner.push_back(full[s]);
  for (int k = s; k <= e; ++k)
    for (TreeNodeId w : f.neighbors(full[k]))
      if (w != full[k - 1] && w != full[k + 1]) {
        rw.boundary.push_back(w);
        owner.push_back(full[k]);
      }
  rw.boundary.push_back(full[e + 1]);
  owner.push_back(full[e]);

  const int m = static_cast<int>(rw.boundary.size());
  std::vector<std::vector<bool>> h(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const TreeNodeId a = rw.boundary[i], b = rw.boundary[j];
      bool adj;
      if (owner[i] == owner[j])
        adj = label_adjacent(f, owner[i], a, b);
      else
        adj = label_adjacent(f, owner[i], a, owner[j]) && label_adjacent(f, owner[j], owner[i], b);
      h[i][j] = h[j][i] = adj;
    }
  h[0][m - 1] = h[m - 1][0] = !h[0][m - 1];

  std::vector<NodeKind> kinds;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> centres;
  decompose_markers(h, kinds, edges, centres);
  rw.made = f.replace_region(core, rw.boundary, kinds, edges, centres);

  // Only edges at the new ternary nodes can become joinable.
  std::vector<std::pair<TreeNodeId, TreeNodeId>> pending;
  for (TreeNodeId u : rw.made)
    for (TreeNodeId w : f.neighbors(u)) pending.emplace_back(u, w);
  std::unordered_map<TreeNodeId, TreeNodeId> merged;
  auto resolve = [&](TreeNodeId u) {
    while (merged.count(u)) u = merged[u];
    return u;
  };
  for (auto [a0, b0] : pending) {
    const TreeNodeId a = resolve(a0), b = resolve(b0);
    if (a == b || f.node(a).kind == NodeKind::Leaf || f.node(b).kind == NodeKind::Leaf) continue;
    if (!f.join_applies(a, b)) continue;
    const TreeNodeId k = *f.try_join(a, b);
    merged[a == k ? b : a] = k;
    rw.keeps.push_back(k);
  }
  return rw;
}

void validate_pair(const SplitForest& f, Vertex x, Vertex y) {
  if (!f.has_vertex(x) || !f.has_vertex(y)) throw std::invalid_argument("unknown vertex");
  if (x == y) throw std::invalid_argument("edge needs two distinct vertices");
}

void check_mode(const PathWord& pw, EdgeMode mode) {
  if (pw.truncated) return;
  const bool present = pw.same_component && !has_letter_s(pw.letters);
  if (mode == EdgeMode::Insert && present) throw std::invalid_argument("edge already present");
  if (mode == EdgeMode::Delete && !present) throw std::invalid_argument("edge not present");
}

// x and y in different components: re-insert x with y added to its
// neighbourhood, which rebuilds the merged component.
void bridge_components(SplitForest& f, Vertex x, Vertex y, EdgeResult& out) {
  std::vector<Vertex> nb = f.accessible_from(x);
  nb.push_back(y);
  f.delete_vertex(x);
  const InsertResult res = f.insert_vertex_with_id(x, nb);
  if (!res.verdict.accept) throw std::logic_error("bridging two components was rejected");
  out.accept = true;
  out.rebuilt = true;
  out.components = {f.component_of(x)};
}

void finish_rewrite(SplitForest& f, Vertex x, Vertex y, const Rewrite&, EdgeResult& out) {
  out.accept = true;
  out.components = {f.component_of(x)};
  const PathWord after = path_word(f, x, y);
  out.image = after.str();
}

EdgeResult dh_modify(SplitForest& f, Vertex x, Vertex y, EdgeMode mode, Rewrite* rw_out) {
  validate_pair(f, x, y);
  f.begin_op();
  EdgeResult out;
  out.word = path_word(f, x, y);
  if (!out.word.same_component) {
    if (mode == EdgeMode::Delete) throw std::invalid_argument("edge not present");
    bridge_components(f, x, y, out);
    return out;
  }
  check_mode(out.word, mode);
  if (out.word.truncated) {
    out.reason = "path between x and y has more than four nodes";
    return out;
  }
  const RowMatch m = match_row(dh_table(), out.word.letters, mode);
  out.row = m.row;
  if (m.row < 0) {
    out.reason = std::string("word ") + out.word.str() + " is not in the " + to_string(mode) + " table";
    return out;
  }
  if (mode == EdgeMode::Delete && m.core_len == 0) {
    std::vector<TreeNodeId> full{out.word.leaf_x};
    full.insert(full.end(), out.word.nodes.begin(), out.word.nodes.end());
    full.push_back(out.word.leaf_y);
    auto [c1, c2] = f.cut_edge(full[m.lead], full[m.lead + 1]);
    out.accept = true;
    out.disconnected = true;
    out.components = {c1, c2};
    return out;
  }
  Rewrite rw = rewrite_core(f, out.word, m.lead, m.core_len);
  finish_rewrite(f, x, y, rw, out);
  if (rw_out) *rw_out = std::move(rw);
  return out;
}

// Applies a DH modification on a copy and keeps it when `ok` accepts the
// components it produced.
template <class Pred>
EdgeResult modify_on_copy(SplitForest& f, Vertex x, Vertex y, EdgeMode mode, Pred ok, const char* reject) {
  SplitForest copy = f;
  EdgeResult out = dh_modify(copy, x, y, mode, nullptr);
  out.rebuilt = true;
  if (!out.accept) return out;
  for (ComponentId c : out.components)
    if (!ok(copy, c, out)) {
      out.accept = false;
      out.reason = reject;
      return out;
    }
  f = std::move(copy);
  return out;
}

bool star_is_safe_ternary(const SplitForest& f, TreeNodeId u, TreeNodeId prev, TreeNodeId next) {
  if (f.node(u).kind != NodeKind::Star || f.degree(u) != 3) return false;
  for (TreeNodeId w : f.neighbors(u))
    if (w != prev && w != next) return f.node(w).kind != NodeKind::Star;
  return false;
}

}  // namespace

EdgeResult dh_edge_insert(SplitForest& f, Vertex x, Vertex y) { return dh_modify(f, x, y, EdgeMode::Insert, nullptr); }

EdgeResult dh_edge_delete(SplitForest& f, Vertex x, Vertex y) { return dh_modify(f, x, y, EdgeMode::Delete, nullptr); }

EdgeResult cograph_edge_modify(SplitForest& f, const std::optional<TreeRoot>& root, Vertex x, Vertex y,
                               EdgeMode mode) {
  validate_pair(f, x, y);
  const PathWord pw = path_word(f, x, y);
  check_mode(pw, mode);
  auto cograph_ok = [](const SplitForest& g, ComponentId c, EdgeResult& o) {
    auto r = is_cograph_tree(g, c);
    if (r && c == o.components.front()) o.root = r;
    return r.has_value();
  };
  if (!pw.same_component) {
    if (mode == EdgeMode::Delete) throw std::invalid_argument("edge not present");
    return modify_on_copy(f, x, y, mode, cograph_ok, "merged component is not a cograph");
  }
  EdgeResult out;
  out.word = pw;
  if (pw.truncated) {
    out.reason = "path between x and y has more than four nodes";
    return out;
  }
  if (mode == EdgeMode::Delete && match_row(dh_table(), pw.letters, mode).core_len == 0 &&
      match_row(dh_table(), pw.letters, mode).row >= 0)
    return modify_on_copy(f, x, y, mode, cograph_ok, "a remaining component is not a cograph");
  const RowMatch m = match_row(cograph_table(), pw.letters, mode);
  out.row = m.row;
  if (m.row < 0) {
    out.reason = std::string("word ") + pw.str() + " is not in the cograph " + to_string(mode) + " table";
    return out;
  }
  const ComponentId c = f.component_of(x);
  TreeRoot r;
  if (root) {
    r = *root;
  } else {
    auto rc = is_cograph_tree(f, c);
    if (!rc) throw std::invalid_argument("component is not a cograph");
    r = *rc;
  }
  const bool in_core = std::any_of(pw.nodes.begin(), pw.nodes.end(), [&](TreeNodeId u) { return r.contains(u); });
  Rewrite rw;
  out = dh_modify(f, x, y, mode, &rw);
  out.row = m.row;
  std::vector<TreeNodeId> seeds = rw.made;
  seeds.insert(seeds.end(), rw.boundary.begin(), rw.boundary.end());
  seeds.insert(seeds.end(), rw.remainders.begin(), rw.remainders.end());
  seeds.insert(seeds.end(), rw.keeps.begin(), rw.keeps.end());
  std::vector<TreeNodeId> ref;
  auto alive = [&](TreeNodeId u) { return u >= 0 && u < f.node_slots() && f.node(u).alive; };
  if (in_core) {
    for (TreeNodeId u : seeds)
      if (alive(u) && f.node(u).kind != NodeKind::Leaf) {
        ref.push_back(u);
        break;
      }
  } else {
    for (TreeNodeId u : {r.a, r.b}) {
      if (u < 0) continue;
      if (alive(u)) {
        ref.push_back(u);
      } else {
        for (TreeNodeId k : rw.keeps)
          if (alive(k)) ref.push_back(k);
      }
    }
  }
  out.root = local_tree_root(f, ref, seeds);
  if (!out.root) {
    out.root_fallback = true;
    out.root = is_cograph_tree(f, c);
  }
  return out;
}

EdgeResult tlp_edge_modify(SplitForest& f, Vertex x, Vertex y, EdgeMode mode) {
  validate_pair(f, x, y);
  const PathWord pw = path_word(f, x, y);
  check_mode(pw, mode);
  auto tlp_ok = [](const SplitForest& g, ComponentId c, EdgeResult&) { return is_3lp_tree(g, c); };
  if (!pw.same_component) {
    if (mode == EdgeMode::Delete) throw std::invalid_argument("edge not present");
    return modify_on_copy(f, x, y, mode, tlp_ok, "merged component is not a 3-leaf power");
  }
  EdgeResult out;
  out.word = pw;
  if (pw.truncated) {
    out.reason = "path between x and y has more than four nodes";
    return out;
  }
  const RowMatch dm = match_row(dh_table(), pw.letters, mode);
  if (mode == EdgeMode::Delete && dm.row >= 0 && dm.core_len == 0)
    return modify_on_copy(f, x, y, mode, tlp_ok, "a remaining component is not a 3-leaf power");
  const RowMatch m = match_row(tlp_table(), pw.letters, mode);
  out.row = m.row;
  if (m.row < 0) {
    out.reason = std::string("word ") + pw.str() + " is not in the 3-leaf power " + to_string(mode) + " table";
    return out;
  }
  std::vector<TreeNodeId> full{pw.leaf_x};
  full.insert(full.end(), pw.nodes.begin(), pw.nodes.end());
  full.push_back(pw.leaf_y);
  const std::string w = word_string(pw.letters);
  const int s = m.lead + 1;
  auto star_ok = [&](int k) { return star_is_safe_ternary(f, full[k], full[k - 1], full[k + 1]); };
  bool ok = true;
  if (m.core_len == 2) {
    // SK / SyK / KS / KSx: the star of the core must be ternary with a
    // clique or leaf off the path.
    const int k = f.node(full[s]).kind == NodeKind::Star ? s : s + 1;
    ok = star_ok(k);
  } else if (w == "SxS" || w == "SSy") {
    ok = star_ok(w == "SxS" ? 2 : 1);
  } else if (w == "K") {
    const TreeNodeId u = full[1];
    ok = f.degree(u) == f.component_size(f.component_of(x));
    if (!ok && f.degree(u) == 3)
      for (TreeNodeId n : f.neighbors(u))
        if (n != full[0] && n != full[2])
          ok = f.node(n).kind == NodeKind::Star && f.node(n).centre != u;
  }
  if (!ok) {
    out.reason = "degree or neighbour condition of the 3-leaf power table fails";
    return out;
  }
  out = dh_modify(f, x, y, mode, nullptr);
  out.row = m.row;
  return out;
}

// ---- caterpillars and forbidden subwords -------------------------------------------------

glt::GraphLabelledTree word_to_caterpillar(const Word& w) {
  glt::GraphLabelledTree t;
  const glt::NodeId x = t.add_leaf("x");
  if (w.empty()) {
    const glt::NodeId y = t.add_leaf("y");
    t.connect(x, y);
    return t;
  }
  std::vector<glt::NodeId> n;
  for (std::size_t i = 0; i < w.size(); ++i) n.push_back(t.add_internal());
  std::vector<glt::MarkerId> prev(w.size()), next(w.size()), leaf(w.size());
  prev[0] = t.connect(x, n[0]).second;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    auto [a, b] = t.connect(n[i], n[i + 1]);
    next[i] = a;
    prev[i + 1] = b;
  }
  const glt::NodeId y = t.add_leaf("y");
  next.back() = t.connect(n.back(), y).first;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const glt::NodeId z = t.add_leaf("z" + std::to_string(i + 1));
    leaf[i] = t.connect(n[i], z).first;
    const glt::MarkerId p = prev[i], q = next[i], r = leaf[i];
    switch (w[i]) {
      case Letter::K:
        t.add_label_edge(p, q);
        t.add_label_edge(p, r);
        t.add_label_edge(q, r);
        break;
      case Letter::S:
        t.add_label_edge(r, p);
        t.add_label_edge(r, q);
        break;
      case Letter::Sx:
        t.add_label_edge(p, q);
        t.add_label_edge(p, r);
        break;
      case Letter::Sy:
        t.add_label_edge(q, p);
        t.add_label_edge(q, r);
        break;
    }
  }
  return t;
}

Graph word_graph(const Word& w) { return word_to_caterpillar(w).accessibility_graph(); }

namespace {

// G_w after the modification, or nullopt when the mode does not apply.
std::optional<Graph> modified_word_graph(const Word& w, EdgeMode mode) {
  Graph g = word_graph(w);
  const Vertex x = g.id("x"), y = g.id("y");
  const bool present = g.has_edge(x, y);
  if (mode == EdgeMode::Insert) {
    if (present) return std::nullopt;
    g.add_edge(x, y);
  } else {
    if (!present) return std::nullopt;
    g.remove_edge(x, y);
  }
  return g;
}

// Subwords obtained by deleting one letter other than S.
std::vector<Word> one_letter_deletions(const Word& w) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == Letter::S) continue;
    Word v = w;
    v.erase(v.begin() + static_cast<long>(i));
    out.push_back(std::move(v));
  }
  return out;
}

int kind_rank(const std::string& kind) {
  static const std::array<const char*, 4> order{"hole", "gem", "house", "domino"};
  for (std::size_t i = 0; i < order.size(); ++i)
    if (kind == order[i]) return static_cast<int>(i);
  return static_cast<int>(order.size());
}

}  // namespace

bool word_safe(const Word& w, EdgeMode mode) {
  const auto g = modified_word_graph(w, mode);
  return !g || in_class_oracle(*g, "dh");
}

std::optional<SubwordWitness> forbidden_subword_scan(const Word& w, EdgeMode mode) {
  std::vector<std::size_t> optional_pos;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != Letter::S) optional_pos.push_back(i);
  const std::size_t k = optional_pos.size();
  std::optional<SubwordWitness> best;
  for (unsigned mask = 0; mask < (1U << k); ++mask) {
    Word sub;
    for (std::size_t i = 0, j = 0; i < w.size(); ++i) {
      if (w[i] == Letter::S) {
        sub.push_back(w[i]);
        continue;
      }
      if ((mask >> j++) & 1U) sub.push_back(w[i]);
    }
    if (best && sub.size() > best->subword.size()) continue;
    const auto g = modified_word_graph(sub, mode);
    if (!g || in_class_oracle(*g, "dh")) continue;
    const auto witness = find_forbidden_dh_subgraph(*g);
    SubwordWitness cand{sub, witness ? witness->kind : "unknown"};
    if (!best || sub.size() < best->subword.size() || kind_rank(cand.kind) < kind_rank(best->kind))
      best = std::move(cand);
  }
  return best;
}

std::vector<Word> forbidden_subwords(EdgeMode mode, int max_len) {
  std::vector<Word> out;
  all_words(max_len, [&](const Word& w) {
    if (word_safe(w, mode)) return;
    for (const Word& v : one_letter_deletions(w))
      if (!word_safe(v, mode)) return;
    out.push_back(w);
  });
  return out;
}

}  // namespace splitdh
