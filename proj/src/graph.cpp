#include "splitdh/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace splitdh {

// ---- Graph ------------------------------------------------------------------

Graph Graph::with_vertices(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex(std::to_string(i));
  return g;
}

Graph Graph::from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g;
  for (const auto& [a, b] : edges) {
    Vertex u = g.find(a).value_or(-1);
    if (u < 0) u = g.add_vertex(a);
    Vertex v = g.find(b).value_or(-1);
    if (v < 0) v = g.add_vertex(b);
    if (!g.has_edge(u, v)) g.add_edge(u, v);
  }
  return g;
}

Vertex Graph::add_vertex(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty vertex name");
  if (index_.count(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
  const Vertex v = slot_count();
  names_.push_back(name);
  alive_.push_back(true);
  adj_.emplace_back();
  index_.emplace(name, v);
  ++live_;
  return v;
}

Vertex Graph::add_vertex() {
  std::string name = std::to_string(slot_count());
  while (index_.count(name)) name += "'";
  return add_vertex(name);
}

void Graph::remove_vertex(Vertex v) {
  if (!contains(v)) throw std::out_of_range("unknown vertex");
  for (Vertex u : adj_[v]) adj_[u].erase(v);
  edges_ -= static_cast<int>(adj_[v].size());
  adj_[v].clear();
  alive_[v] = false;
  index_.erase(names_[v]);
  --live_;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (!contains(u) || !contains(v)) throw std::out_of_range("unknown vertex");
  if (u == v) throw std::invalid_argument("self-loop on '" + names_[u] + "'");
  if (!adj_[u].insert(v).second) throw std::invalid_argument("duplicate edge");
  adj_[v].insert(u);
  ++edges_;
}

void Graph::remove_edge(Vertex u, Vertex v) {
  if (!has_edge(u, v)) throw std::invalid_argument("edge absent");
  adj_[u].erase(v);
  adj_[v].erase(u);
  --edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  return contains(u) && contains(v) && adj_[u].count(v) > 0;
}

const std::set<Vertex>& Graph::neighbors(Vertex v) const {
  if (!contains(v)) throw std::out_of_range("unknown vertex");
  return adj_[v];
}

std::vector<Vertex> Graph::vertices() const {
  std::vector<Vertex> out;
  out.reserve(live_);
  for (Vertex v = 0; v < slot_count(); ++v)
    if (alive_[v]) out.push_back(v);
  return out;
}

std::optional<Vertex> Graph::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex Graph::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown vertex '" + name + "'");
  return it->second;
}

Graph Graph::induced(const std::vector<Vertex>& keep) const {
  Graph h;
  std::unordered_map<Vertex, Vertex> map;
  for (Vertex v : keep) map[v] = h.add_vertex(names_.at(v));
  for (Vertex v : keep)
    for (Vertex u : neighbors(v))
      if (u > v && map.count(u)) h.add_edge(map[v], map[u]);
  return h;
}

bool Graph::same_as(const Graph& other) const {
  if (vertex_count() != other.vertex_count() || edge_count() != other.edge_count()) return false;
  for (Vertex v : vertices()) {
    auto w = other.find(names_[v]);
    if (!w) return false;
    for (Vertex u : adj_[v]) {
      auto x = other.find(names_[u]);
      if (!x || !other.has_edge(*w, *x)) return false;
    }
  }
  return true;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex v : vertices())
    for (Vertex u : adj_[v])
      if (u > v) out.emplace_back(v, u);
  return out;
}

// ---- text format ------------------------------------------------------------

Graph read_graph(std::istream& in) {
  Graph g;
  std::string line;
  int lineno = 0;
  auto ensure = [&](const std::string& name) {
    auto v = g.find(name);
    return v ? *v : g.add_vertex(name);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a) || a[0] == '#') continue;
    if (!(ls >> b))
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected two tokens");
    if (ls >> extra)
      throw std::runtime_error("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
    if (a == "v") {
      ensure(b);
      continue;
    }
    if (a == b) throw std::runtime_error("line " + std::to_string(lineno) + ": self-loop");
    Vertex u = ensure(a), v = ensure(b);
    if (!g.has_edge(u, v)) g.add_edge(u, v);
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  for (Vertex v : g.vertices())
    if (g.degree(v) == 0) out << "v " << g.name(v) << '\n';
  for (auto [u, v] : g.edges()) out << g.name(u) << ' ' << g.name(v) << '\n';
}

// ---- traversal --------------------------------------------------------------

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<char> seen(g.slot_count(), 0);
  for (Vertex s : g.vertices()) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex u : g.neighbors(comp[i]))
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::map<Vertex, int> bfs_distances(const Graph& g, Vertex source) {
  if (!g.contains(source)) throw std::out_of_range("unknown source vertex");
  std::map<Vertex, int> dist{{source, 0}};
  std::deque<Vertex> q{source};
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop_front();
    for (Vertex u : g.neighbors(v))
      if (!dist.count(u)) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  return dist;
}

std::vector<Vertex> bfs_order(const Graph& g, Vertex source) {
  std::vector<Vertex> order{source};
  std::vector<char> seen(g.slot_count(), 0);
  seen[source] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex u : g.neighbors(order[i]))
      if (!seen[u]) {
        seen[u] = 1;
        order.push_back(u);
      }
  return order;
}

TwinPartition true_twin_classes(const Graph& g) {
  std::map<std::set<Vertex>, std::vector<Vertex>> by_closed;
  for (Vertex v : g.vertices()) {
    auto closed = g.neighbors(v);
    closed.insert(v);
    by_closed[closed].push_back(v);
  }
  TwinPartition p;
  for (auto& [_, cls] : by_closed) p.classes.push_back(cls);
  std::sort(p.classes.begin(), p.classes.end());
  return p;
}

// ---- bit matrix for the oracles -----------------------------------------------

namespace {

class BitMatrix {
 public:
  explicit BitMatrix(const Graph& g) : verts_(g.vertices()) {
    n_ = static_cast<int>(verts_.size());
    words_ = (n_ + 63) / 64;
    rows_.assign(static_cast<std::size_t>(n_) * words_, 0);
    std::unordered_map<Vertex, int> pos;
    for (int i = 0; i < n_; ++i) pos[verts_[i]] = i;
    for (int i = 0; i < n_; ++i)
      for (Vertex u : g.neighbors(verts_[i])) set(i, pos[u]);
  }

  int n() const { return n_; }
  bool edge(int a, int b) const { return (row(a)[b / 64] >> (b % 64)) & 1U; }
  const std::uint64_t* row(int a) const { return rows_.data() + static_cast<std::size_t>(a) * words_; }
  int words() const { return words_; }

 private:
  void set(int a, int b) { rows_[static_cast<std::size_t>(a) * words_ + b / 64] |= 1ULL << (b % 64); }

  std::vector<Vertex> verts_;
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Neighbourhoods of a and b restricted to `alive`, with a and b themselves
// masked out, compared word by word.
bool twins_in(const BitMatrix& m, const std::vector<std::uint64_t>& alive, int a, int b) {
  const auto* ra = m.row(a);
  const auto* rb = m.row(b);
  for (int w = 0; w < m.words(); ++w) {
    std::uint64_t mask = alive[w];
    if (a / 64 == w) mask &= ~(1ULL << (a % 64));
    if (b / 64 == w) mask &= ~(1ULL << (b % 64));
    if ((ra[w] & mask) != (rb[w] & mask)) return false;
  }
  return true;
}

int degree_in(const BitMatrix& m, const std::vector<std::uint64_t>& alive, int a) {
  int d = 0;
  const auto* r = m.row(a);
  for (int w = 0; w < m.words(); ++w) d += std::popcount(r[w] & alive[w]);
  return d;
}

}  // namespace

bool is_dh_oracle(const Graph& g) {
  if (g.vertex_count() == 0 || !is_connected(g))
    throw std::invalid_argument("is_dh_oracle needs a connected non-empty graph");
  BitMatrix m(g);
  const int n = m.n();
  std::vector<std::uint64_t> alive(m.words(), 0);
  for (int i = 0; i < n; ++i) alive[i / 64] |= 1ULL << (i % 64);
  auto is_alive = [&](int i) { return (alive[i / 64] >> (i % 64)) & 1U; };
  int left = n;
  // Pendant and twin removals keep the graph connected, so each step only has
  // to look for the lowest reducible vertex.
  while (left > 1) {
    int victim = -1;
    for (int v = 0; v < n && victim < 0; ++v) {
      if (!is_alive(v)) continue;
      if (degree_in(m, alive, v) == 1) {
        victim = v;
        break;
      }
      for (int u = 0; u < n; ++u)
        if (u != v && is_alive(u) && twins_in(m, alive, u, v)) {
          victim = v;
          break;
        }
    }
    if (victim < 0) return false;
    alive[victim / 64] &= ~(1ULL << (victim % 64));
    --left;
  }
  return true;
}

bool is_p4_free_oracle(const Graph& g) {
  BitMatrix m(g);
  const int n = m.n();
  // Induced P4 a-b-c-d: edges ab, bc, cd and non-edges ac, bd, ad.
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      if (b == c || !m.edge(b, c)) continue;
      for (int a = 0; a < n; ++a) {
        if (a == b || a == c || !m.edge(a, b) || m.edge(a, c)) continue;
        for (int d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          if (m.edge(c, d) && !m.edge(b, d) && !m.edge(a, d)) return false;
        }
      }
    }
  return true;
}

bool is_3lp_oracle(const Graph& g) {
  if (g.vertex_count() == 0 || !is_connected(g))
    throw std::invalid_argument("is_3lp_oracle needs a connected non-empty graph");
  const auto twins = true_twin_classes(g);
  std::vector<Vertex> reps;
  for (const auto& cls : twins.classes) reps.push_back(cls.front());
  const Graph q = g.induced(reps);
  // Twin classes are modules, so the quotient is the graph induced on one
  // representative per class.  It must be a tree.
  return is_connected(q) && q.edge_count() == q.vertex_count() - 1;
}

bool is_chordal_oracle(const Graph& g) {
  BitMatrix m(g);
  const int n = m.n();
  std::vector<char> alive(n, 1);
  for (int left = n; left > 0; --left) {
    int simplicial = -1;
    for (int v = 0; v < n && simplicial < 0; ++v) {
      if (!alive[v]) continue;
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) {
        if (!alive[a] || a == v || !m.edge(v, a)) continue;
        for (int b = a + 1; b < n; ++b)
          if (alive[b] && b != v && m.edge(v, b) && !m.edge(a, b)) {
            ok = false;
            break;
          }
      }
      if (ok) simplicial = v;
    }
    if (simplicial < 0) return false;
    alive[simplicial] = 0;
  }
  return true;
}

bool in_class_oracle(const Graph& g, const std::string& cls) {
  if (cls == "cograph") return is_p4_free_oracle(g);
  for (const auto& comp : connected_components(g)) {
    const Graph h = g.induced(comp);
    if (cls == "dh") {
      if (!is_dh_oracle(h)) return false;
    } else if (cls == "3lp") {
      if (!is_3lp_oracle(h)) return false;
    } else {
      throw std::invalid_argument("unknown class '" + cls + "'");
    }
  }
  return true;
}

// ---- dense graphs -------------------------------------------------------------

DenseGraph DenseGraph::from(const Graph& g, std::vector<Vertex>* order) {
  const auto verts = g.vertices();
  if (verts.size() > 64) throw std::invalid_argument("dense graphs hold at most 64 vertices");
  DenseGraph d;
  d.n = static_cast<int>(verts.size());
  d.adj.assign(d.n, 0);
  std::unordered_map<Vertex, int> pos;
  for (int i = 0; i < d.n; ++i) pos[verts[i]] = i;
  for (int i = 0; i < d.n; ++i)
    for (Vertex u : g.neighbors(verts[i])) d.adj[i] |= 1ULL << pos[u];
  if (order) *order = verts;
  return d;
}

void DenseGraph::set_edge(int u, int v, bool on) {
  if (on) {
    adj[u] |= 1ULL << v;
    adj[v] |= 1ULL << u;
  } else {
    adj[u] &= ~(1ULL << v);
    adj[v] &= ~(1ULL << u);
  }
}

Graph DenseGraph::to_graph() const {
  Graph g = Graph::with_vertices(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(u, v)) g.add_edge(u, v);
  return g;
}

namespace {

std::uint64_t code_under(const DenseGraph& g, const std::vector<int>& perm) {
  // perm[i] = original vertex placed at position i
  std::uint64_t code = 0;
  int bit = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j, ++bit)
      if (g.edge(perm[i], perm[j])) code |= 1ULL << bit;
  return code;
}

// Vertex invariant: degree, then the sorted multiset of neighbour degrees.
std::vector<std::vector<int>> refine_classes(const DenseGraph& g) {
  std::vector<int> deg(g.n);
  for (int v = 0; v < g.n; ++v) deg[v] = std::popcount(g.adj[v]);
  std::vector<std::pair<std::vector<int>, int>> keyed;
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> key{deg[v]};
    std::vector<int> nd;
    for (int u = 0; u < g.n; ++u)
      if (g.edge(v, u)) nd.push_back(deg[u]);
    std::sort(nd.begin(), nd.end());
    key.insert(key.end(), nd.begin(), nd.end());
    keyed.emplace_back(std::move(key), v);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::vector<int>> classes;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) classes.emplace_back();
    classes.back().push_back(keyed[i].second);
  }
  return classes;
}

void permute_classes(const DenseGraph& g, std::vector<std::vector<int>>& classes, std::size_t k,
                     std::vector<int>& prefix, std::uint64_t& best) {
  if (k == classes.size()) {
    best = std::min(best, code_under(g, prefix));
    return;
  }
  auto& cls = classes[k];
  std::sort(cls.begin(), cls.end());
  do {
    const std::size_t base = prefix.size();
    prefix.insert(prefix.end(), cls.begin(), cls.end());
    permute_classes(g, classes, k + 1, prefix, best);
    prefix.resize(base);
  } while (std::next_permutation(cls.begin(), cls.end()));
}

}  // namespace

std::uint64_t canonical_dense_code(const DenseGraph& g) {
  if (g.n > 11) throw std::invalid_argument("canonical_dense_code supports at most 11 vertices");
  auto classes = refine_classes(g);
  std::vector<int> prefix;
  std::uint64_t best = ~0ULL;
  permute_classes(g, classes, 0, prefix, best);
  return best;
}

bool isomorphic_bruteforce(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const DenseGraph da = DenseGraph::from(a), db = DenseGraph::from(b);
  const int n = da.n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n; ++v)
        if (da.edge(u, v) != db.edge(perm[u], perm[v])) {
          ok = false;
          break;
        }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<Graph> connected_graphs_up_to_iso(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("enumeration supports 1..10 vertices");
  // All graphs (connected or not) on k vertices, grown one vertex at a time.
  std::vector<DenseGraph> level{DenseGraph{1, {0}}};
  for (int k = 2; k <= n; ++k) {
    std::map<std::uint64_t, DenseGraph> next;
    for (const auto& g : level)
      for (std::uint64_t mask = 0; mask < (1ULL << (k - 1)); ++mask) {
        DenseGraph h{k, g.adj};
        h.adj.push_back(0);
        for (int u = 0; u < k - 1; ++u)
          if ((mask >> u) & 1U) h.set_edge(u, k - 1);
        next.emplace(canonical_dense_code(h), std::move(h));
      }
    level.clear();
    for (auto& [_, g] : next) level.push_back(std::move(g));
  }
  std::vector<Graph> out;
  for (const auto& d : level) {
    Graph g = d.to_graph();
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

// ---- forbidden induced subgraphs ------------------------------------------------

namespace {

DenseGraph pattern(int n, std::initializer_list<std::pair<int, int>> edges) {
  DenseGraph d{n, std::vector<std::uint64_t>(n, 0)};
  for (auto [u, v] : edges) d.set_edge(u, v);
  return d;
}

DenseGraph induced_dense(const DenseGraph& g, const std::vector<int>& sub) {
  DenseGraph h{static_cast<int>(sub.size()), std::vector<std::uint64_t>(sub.size(), 0)};
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t j = i + 1; j < sub.size(); ++j)
      if (g.edge(sub[i], sub[j])) h.set_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

bool is_hole(const DenseGraph& h) {
  if (h.n < 5) return false;
  for (int v = 0; v < h.n; ++v)
    if (std::popcount(h.adj[v]) != 2) return false;
  // 2-regular and connected means a single cycle.
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t nxt = 0;
    for (int v = 0; v < h.n; ++v)
      if ((frontier >> v) & 1U) nxt |= h.adj[v];
    frontier = nxt & ~seen;
    seen |= nxt;
  }
  return std::popcount(seen) == h.n;
}

}  // namespace

std::optional<ForbiddenWitness> find_forbidden_dh_subgraph(const Graph& g, int cap) {
  std::vector<Vertex> order;
  const DenseGraph d = DenseGraph::from(g, &order);
  if (d.n > cap) throw std::invalid_argument("graph exceeds the oracle size cap");
  static const DenseGraph gem = pattern(5, {{0, 1}, {1, 2}, {2, 3}, {4, 0}, {4, 1}, {4, 2}, {4, 3}});
  static const DenseGraph house = pattern(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {3, 4}});
  static const DenseGraph domino =
      pattern(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}});
  const std::uint64_t gem_code = canonical_dense_code(gem);
  const std::uint64_t house_code = canonical_dense_code(house);
  const std::uint64_t domino_code = canonical_dense_code(domino);

  for (int size = 5; size <= d.n; ++size) {
    // Subsets of the given size in increasing mask order.
    for (std::uint64_t mask = (1ULL << size) - 1; mask < (1ULL << d.n);) {
      std::vector<int> sub;
      for (int v = 0; v < d.n; ++v)
        if ((mask >> v) & 1U) sub.push_back(v);
      const DenseGraph h = induced_dense(d, sub);
      std::string kind;
      if (is_hole(h)) {
        kind = "hole";
      } else if (size <= 6) {
        const std::uint64_t c = canonical_dense_code(h);
        if (size == 5 && c == gem_code) kind = "gem";
        if (size == 5 && c == house_code) kind = "house";
        if (size == 6 && c == domino_code) kind = "domino";
      }
      if (!kind.empty()) {
        ForbiddenWitness w{kind, {}};
        for (int v : sub) w.vertices.push_back(order[v]);
        return w;
      }
      // Gosper's hack: next mask with the same popcount.
      const std::uint64_t c = mask & (~mask + 1);
      const std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return std::nullopt;
}

Graph random_dh_graph(int n, std::mt19937& rng, double twin_bias) {
  if (n < 1) throw std::invalid_argument("random_dh_graph needs n >= 1");
  Graph g;
  g.add_vertex("v0");
  std::bernoulli_distribution twin(twin_bias), coin(0.5);
  for (int i = 1; i < n; ++i) {
    const Vertex y = static_cast<Vertex>(std::uniform_int_distribution<int>(0, i - 1)(rng));
    const std::vector<Vertex> nb(g.neighbors(y).begin(), g.neighbors(y).end());
    const Vertex x = g.add_vertex("v" + std::to_string(i));
    if (!twin(rng)) {
      g.add_edge(x, y);
      continue;
    }
    for (Vertex v : nb) g.add_edge(x, v);
    if (nb.empty() || coin(rng)) g.add_edge(x, y);
  }
  return g;
}

}  // namespace splitdh
