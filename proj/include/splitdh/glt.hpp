#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "splitdh/graph.hpp"

namespace splitdh::glt {

using NodeId = int;
using MarkerId = int;

enum class LabelKind { Clique, Star, Prime, Other };
const char* to_string(LabelKind k);

// One marker vertex of a node label; it stands for the tree edge leading
// from its owner node toward `toward`.
struct Marker {
  NodeId owner = -1;
  NodeId toward = -1;
};

struct Node {
  bool alive = true;
  bool leaf = false;
  std::string name;           // leaves only
  NodeId leaf_neighbor = -1;  // leaves only
  std::vector<MarkerId> markers;                   // internal nodes only
  std::map<MarkerId, std::set<MarkerId>> label;    // label graph on markers
};

// A bipartition of a vertex set; `first` holds the smallest vertex.
struct Bipartition {
  std::vector<Vertex> first;
  std::vector<Vertex> second;
  auto operator<=>(const Bipartition&) const = default;
};

// General graph-labelled tree: a tree whose internal nodes carry arbitrary
// label graphs with a marker vertex per incident tree edge.
class GraphLabelledTree {
 public:
  // Tree with a single internal node labelled by `g` (or a bare leaf / a
  // leaf-leaf edge when g has fewer than three vertices).
  static GraphLabelledTree single_node(const Graph& g);

  // Low-level construction.
  NodeId add_leaf(const std::string& name);
  NodeId add_internal();
  // Connects two nodes by a tree edge, creating the marker(s) and returning
  // them (-1 for a leaf endpoint).
  std::pair<MarkerId, MarkerId> connect(NodeId a, NodeId b);
  void add_label_edge(MarkerId a, MarkerId b);

  // ---- queries ----
  const Node& node(NodeId v) const { return nodes_.at(v); }
  const Marker& marker(MarkerId m) const { return markers_.at(m); }
  std::vector<NodeId> nodes() const;      // alive, internal and leaves
  std::vector<NodeId> internal_nodes() const;
  std::vector<NodeId> leaves() const;
  std::optional<NodeId> leaf_by_name(const std::string& name) const;
  std::vector<NodeId> neighbors(NodeId v) const;
  int degree(NodeId v) const;
  MarkerId marker_toward(NodeId v, NodeId nbr) const;
  bool label_edge(MarkerId a, MarkerId b) const;
  LabelKind classify(NodeId v) const;
  // Star centre marker (only meaningful when classify(v) == Star).
  MarkerId star_centre(NodeId v) const;
  // Label as a graph whose vertices are named by marker id; `order` receives
  // the marker ids in vertex order.
  Graph label_graph(NodeId v, std::vector<MarkerId>* order = nullptr) const;
  // Leaf names on the `toward` side of the edge behind marker m.
  std::vector<std::string> side_leaves(NodeId from, NodeId toward) const;

  // ---- semantics ----
  Graph accessibility_graph() const;
  // True when `target` (a node or a leaf) is accessible from leaf `from`.
  bool is_accessible(NodeId from, NodeId target) const;
  // Accessibility graph is connected and every label is a clique or a star.
  bool is_clique_star() const;
  bool is_reduced() const;

  // ---- rewriting ----
  // Splits node v along the marker bipartition (a_side, rest).  Returns the
  // two resulting nodes (the A side keeps v's id).  Throws when the
  // bipartition is not a split of v's label.
  std::pair<NodeId, NodeId> node_split(NodeId v, const std::set<MarkerId>& a_side);
  // Joins the two internal endpoints of a tree edge into one node.
  NodeId edge_join(NodeId u, NodeId v);
  // Contracts degree-2 nodes, then applies clique-joins and star-joins until
  // none applies.
  void reduce();
  // Graph-labelled tree of the subgraph induced by the given leaf names.
  GraphLabelledTree induced(const std::set<std::string>& leaf_names) const;

  // Splits read off the tree: one per edge not incident to a leaf.  Vertices
  // are identified through `g` by leaf name.
  std::vector<Bipartition> edge_splits(const Graph& g) const;

  // Canonical string for comparing trees over the same leaf names: every
  // marker is named by the leaf set behind it.
  std::string named_form() const;

  void dump(std::ostream& out) const;
  void dot(std::ostream& out) const;

  int node_slots() const { return static_cast<int>(nodes_.size()); }

 private:
  void retarget(NodeId nbr, NodeId from, NodeId to);

  std::vector<Node> nodes_;
  std::vector<Marker> markers_;
};

inline constexpr int kSplitOracleCap = 12;

// Raw exhaustive enumeration of all splits of g (both sides >= 2).
std::vector<Bipartition> enumerate_splits_raw(const Graph& g);
// Split with the first vertex on side `first` and the smallest bitmask, or
// nullopt when g is prime (or has fewer than four vertices).
std::optional<Bipartition> find_split_bruteforce(const Graph& g);
// Cunningham split tree by exhaustive splitting.  With `rng`, nodes and
// splits are picked at random instead of lexicographically.
GraphLabelledTree split_tree_bruteforce(const Graph& g, std::mt19937* rng = nullptr);
// All splits of g, read off the split tree: tree edges plus the bipartitions
// of degenerate nodes.
std::vector<Bipartition> enumerate_splits(const Graph& g);

}  // namespace splitdh::glt
