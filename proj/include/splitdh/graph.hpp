#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace splitdh {

using Vertex = int;

// Simple loopless undirected graph over named vertices.
//
// Vertices get dense integer ids in insertion order; removed ids are never
// reused, so an id stays valid for the lifetime of the graph.  External names
// are kept for I/O and reporting.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on vertices named "0".."n-1".
  static Graph with_vertices(int n);
  // Builds a graph from an edge list over vertex names, adding names on demand.
  static Graph from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

  Vertex add_vertex(const std::string& name);
  Vertex add_vertex();  // auto-named by id
  void remove_vertex(Vertex v);
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  bool contains(Vertex v) const { return v >= 0 && v < slot_count() && alive_[v]; }
  bool has_edge(Vertex u, Vertex v) const;
  const std::set<Vertex>& neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  // Live vertex ids in increasing order.
  std::vector<Vertex> vertices() const;
  int vertex_count() const { return live_; }
  int edge_count() const { return edges_; }
  int slot_count() const { return static_cast<int>(alive_.size()); }

  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find(const std::string& name) const;
  Vertex id(const std::string& name) const;  // throws std::out_of_range

  // Induced subgraph on `keep`, preserving names (ids are renumbered).
  Graph induced(const std::vector<Vertex>& keep) const;

  // Same vertex names and same edges (by name).
  bool same_as(const Graph& other) const;

  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> alive_;
  std::vector<std::set<Vertex>> adj_;
  std::unordered_map<std::string, Vertex> index_;
  int live_ = 0;
  int edges_ = 0;
};

// Graph text format: one "u v" edge per line, "v <name>" declares an
// isolated vertex, '#' starts a comment line.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

// ---- traversal ----------------------------------------------------------

// Components sorted by their smallest vertex id; each component sorted.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
std::map<Vertex, int> bfs_distances(const Graph& g, Vertex source);
// A vertex order in which every prefix induces a connected graph.
std::vector<Vertex> bfs_order(const Graph& g, Vertex source);

struct TwinPartition {
  std::vector<std::vector<Vertex>> classes;  // sorted, ordered by first member
};
TwinPartition true_twin_classes(const Graph& g);

// ---- brute-force class oracles -------------------------------------------
//
// These are deliberately independent of the split-tree code.  They work on a
// dense bitmask copy of the graph and are meant for desk-scale inputs.

inline constexpr int kOracleCap = 10;

bool is_dh_oracle(const Graph& g);      // connected input
bool is_p4_free_oracle(const Graph& g);
bool is_3lp_oracle(const Graph& g);     // connected input
bool is_chordal_oracle(const Graph& g);  // no induced cycle of length >= 4

// Class membership of a possibly disconnected graph: every component belongs.
bool in_class_oracle(const Graph& g, const std::string& cls);

struct ForbiddenWitness {
  std::string kind;  // "gem" | "house" | "domino" | "hole"
  std::vector<Vertex> vertices;
};
// Exhaustive search for an induced gem, house, domino or hole (C_k, k >= 5).
// Throws std::invalid_argument when the graph exceeds `cap` vertices.
std::optional<ForbiddenWitness> find_forbidden_dh_subgraph(const Graph& g, int cap = kOracleCap);

// ---- small dense graphs ---------------------------------------------------

// Adjacency bitmasks for graphs on at most 64 vertices.
struct DenseGraph {
  int n = 0;
  std::vector<std::uint64_t> adj;

  static DenseGraph from(const Graph& g, std::vector<Vertex>* order = nullptr);
  bool edge(int u, int v) const { return (adj[u] >> v) & 1U; }
  void set_edge(int u, int v, bool on = true);
  Graph to_graph() const;
};

// Brute-force isomorphism test by permutation search (desk scale).
bool isomorphic_bruteforce(const Graph& a, const Graph& b);

// Canonical upper-triangle adjacency code of a dense graph on <= 11 vertices,
// minimised over permutations that respect a degree-based refinement.
std::uint64_t canonical_dense_code(const DenseGraph& g);

// All connected graphs on exactly n vertices, one per isomorphism class.
std::vector<Graph> connected_graphs_up_to_iso(int n);

// Connected distance-hereditary graph on n vertices grown from one vertex by
// random pendant, false-twin and true-twin steps.  `twin_bias` in [0, 1]
// is the probability of a twin step; twins add many edges per vertex.
Graph random_dh_graph(int n, std::mt19937& rng, double twin_bias = 0.5);

}  // namespace splitdh
