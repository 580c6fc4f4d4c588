#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitdh/glt.hpp"
#include "splitdh/graph.hpp"

namespace splitdh {

using TreeNodeId = int;
using ComponentId = int;

enum class NodeKind : std::uint8_t { Leaf, Clique, Star };
const char* to_string(NodeKind k);

// One node of a clique-star tree.  Stars store the neighbour sitting behind
// the centre marker; every other incident tree edge maps to an extremity.
struct TreeNode {
  NodeKind kind = NodeKind::Leaf;
  bool alive = false;
  TreeNodeId parent = -1;
  int pos = -1;  // index in the parent's children
  std::vector<TreeNodeId> children;
  TreeNodeId centre = -1;  // stars only
  Vertex vertex = -1;      // leaves only
  ComponentId comp = -1;   // leaves and component roots
};

enum class Access : std::uint8_t { Fully, Singly, Partially };
const char* to_string(Access a);

// Smallest subtree spanning a leaf set, as produced by the marking walk.
struct SpanView {
  bool too_large = false;
  int marked = 0;                  // internal nodes marked during the upward walk
  TreeNodeId root = -1;            // root of T(S)
  std::vector<TreeNodeId> nodes;   // nodes of T(S)
  std::vector<int> degree;         // degree inside T(S), parallel to `nodes`
};

enum class LocusKind : std::uint8_t { None, Node, Edge, Pendant, Isolated, Small, Merge };

struct RootLocus {
  LocusKind kind = LocusKind::None;
  TreeNodeId u = -1;
  TreeNodeId v = -1;
};

struct Verdict {
  bool accept = false;
  std::string reason;
  RootLocus locus;
  TreeNodeId partial = -1;  // the partially accessible node, if any
  int span_size = 0;
  int marked = 0;
};

// What an accepted insertion did to the tree, for layers that maintain
// extra structure (tree-roots and class flags).
struct InsertReport {
  Vertex vertex = -1;
  TreeNodeId leaf = -1;
  int update_case = 0;   // 1, 2, 3 as in the update description; 4 = pendant; 0 = other
  char preprocess = 0;   // 'c' clique split, 's' star split
  TreeNodeId root = -1;  // node-root (or first edge-root end) before preprocessing
  TreeNodeId v = -1;
  TreeNodeId w = -1;
  TreeNodeId r = -1;     // node created for the insertion, if any
  bool joined = false;   // r was star-joined into w
  bool rebuilt = false;  // S spanned several components
};

struct InsertResult {
  Verdict verdict;
  InsertReport report;
};

struct DeleteResult {
  bool disconnected = false;
  std::vector<ComponentId> components;  // components formed by the deletion
};

struct OpStats {
  int marked = 0;
  int touched = 0;
};

// Forest of reduced clique-star trees, one per connected component of a
// distance-hereditary graph.  Components with one vertex are a bare leaf,
// with two vertices a leaf-leaf edge; larger components are rooted at an
// internal node.
class SplitForest {
 public:
  SplitForest() = default;

  // ---- vertices ----
  bool has_vertex(Vertex v) const;
  int vertex_count() const { return live_vertices_; }
  int vertex_slots() const { return static_cast<int>(leaf_of_.size()); }
  std::vector<Vertex> vertices() const;
  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find(const std::string& name) const;
  TreeNodeId leaf_of(Vertex v) const { return leaf_of_.at(v); }

  // ---- structure ----
  const TreeNode& node(TreeNodeId u) const { return nodes_.at(u); }
  int node_slots() const { return static_cast<int>(nodes_.size()); }
  int degree(TreeNodeId u) const;
  std::vector<TreeNodeId> neighbors(TreeNodeId u) const;
  bool adjacent(TreeNodeId a, TreeNodeId b) const;
  std::vector<ComponentId> components() const;
  ComponentId component_of(Vertex v) const;
  TreeNodeId component_root(ComponentId c) const { return comps_.at(c).root; }
  int component_size(ComponentId c) const { return comps_.at(c).size; }
  std::vector<Vertex> component_vertices(ComponentId c) const;
  std::vector<TreeNodeId> component_nodes(ComponentId c) const;
  int internal_node_count() const;

  // ---- semantics ----
  Graph to_graph() const;
  Graph component_graph(ComponentId c) const;
  // Leaves accessible from leaf `l`, as vertices.
  std::vector<Vertex> accessible_from(Vertex l) const;
  // Pairs {l, l'} for every l-accessible leaf l'.
  std::vector<std::pair<Vertex, Vertex>> accessibility_set(Vertex l) const;
  glt::GraphLabelledTree to_glt(ComponentId c) const;

  // ---- vertex dynamics ----
  SpanView spanning_subtree(const std::vector<Vertex>& s);
  std::vector<std::pair<TreeNodeId, Access>> classify_access(const SpanView& view) const;
  Verdict check_vertex_insertion(const std::vector<Vertex>& s);
  // Checks and, on acceptance, inserts a new vertex adjacent to `s`.  The
  // forest is unchanged on rejection.
  InsertResult insert_vertex(const std::string& name, const std::vector<Vertex>& s);
  // Same, reusing a given vertex id (which must not be present).
  InsertResult insert_vertex_with_id(Vertex x, const std::vector<Vertex>& s);
  DeleteResult delete_vertex(Vertex x);

  // Reserves an id for a vertex that is not yet in the forest.
  Vertex reserve_vertex(const std::string& name);

  const OpStats& last_stats() const { return stats_; }

  // ---- tree rewriting primitives (used by the edge layer) ----
  // Inserts a new node of kind k on the tree edge a-b.
  TreeNodeId subdivide(TreeNodeId a, TreeNodeId b, NodeKind k);
  // Moves the neighbours in `group` of u to a new node of kind k adjacent to u.
  TreeNodeId split_off(TreeNodeId u, const std::vector<TreeNodeId>& group, NodeKind k);
  // Merges two adjacent internal nodes; the caller fixes kind and centre.
  TreeNodeId merge(TreeNodeId a, TreeNodeId b);
  // Clique-join or star-join of adjacent nodes when one applies.
  std::optional<TreeNodeId> try_join(TreeNodeId a, TreeNodeId b);
  // Removes a degree-2 internal node, linking its neighbours, then joins
  // them when needed.  Returns the two former neighbours.
  std::pair<TreeNodeId, TreeNodeId> contract(TreeNodeId v);
  // Replaces the connected node set `core` by new nodes.  Shape endpoints
  // are new-node indices (>= 0) or ~i for boundary[i]; every boundary node
  // (exactly the neighbours of `core` outside it) appears in one edge.  Star
  // centres use the same encoding; boundary stars that faced the core are
  // redirected to their new neighbour.  Returns the new node ids.
  std::vector<TreeNodeId> replace_region(const std::vector<TreeNodeId>& core,
                                         const std::vector<TreeNodeId>& boundary,
                                         const std::vector<NodeKind>& kinds,
                                         const std::vector<std::pair<int, int>>& edges,
                                         const std::vector<int>& centres);
  // Removes the tree edge a-b, splitting a component in two, and contracts
  // ends left with degree 2.  Returns the two component ids.
  std::pair<ComponentId, ComponentId> cut_edge(TreeNodeId a, TreeNodeId b);
  void set_kind(TreeNodeId u, NodeKind k) { nodes_.at(u).kind = k; }
  void set_centre(TreeNodeId u, TreeNodeId c) { nodes_.at(u).centre = c; }
  void begin_op();
  void touch(TreeNodeId u) const;

  // ---- checks and export ----
  // Empty string when the forest is consistent and every tree is reduced.
  std::string check_invariants() const;
  bool join_applies(TreeNodeId a, TreeNodeId b) const;
  void write_text(std::ostream& out) const;
  void write_dot(std::ostream& out) const;

 private:
  struct Component {
    bool alive = false;
    TreeNodeId root = -1;
    int size = 0;
  };

  TreeNodeId new_node(NodeKind k);
  void free_node(TreeNodeId u);
  void attach(TreeNodeId p, TreeNodeId c);
  void detach(TreeNodeId c);
  void replace_slot(TreeNodeId old_child, TreeNodeId new_child);
  void redirect_centre(TreeNodeId x, TreeNodeId from, TreeNodeId to);
  void make_root(TreeNodeId u, ComponentId c);
  ComponentId new_component(TreeNodeId root, int size);
  TreeNodeId new_leaf(Vertex x, ComponentId c);
  void ensure_vertex_slot(Vertex x, const std::string& name);
  void ensure_scratch();
  std::vector<TreeNodeId> span_neighbors(TreeNodeId u) const;
  bool in_span(TreeNodeId u) const;
  std::optional<std::string> validate_neighborhood(const std::vector<Vertex>& s) const;
  void apply_insertion(Vertex x, const std::vector<Vertex>& s, const Verdict& verdict, InsertReport& rep);
  InsertResult insert_across_components(Vertex x, const std::vector<Vertex>& s);
  void relabel(TreeNodeId start, TreeNodeId avoid, ComponentId c, int* count);
  void drop_marker_fixup(TreeNodeId c);

  std::vector<TreeNode> nodes_;
  std::vector<TreeNodeId> free_nodes_;
  std::vector<Component> comps_;
  std::vector<std::string> names_;
  std::vector<TreeNodeId> leaf_of_;
  std::unordered_map<std::string, Vertex> by_name_;
  int live_vertices_ = 0;

  // Scratch state for the marking walk, reset lazily by epoch.
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<char> marked_;
  std::vector<std::vector<TreeNodeId>> marked_kids_;
  std::vector<TreeNodeId> orient_;
  mutable std::vector<std::uint32_t> touch_stamp_;
  mutable std::uint32_t op_epoch_ = 0;
  mutable OpStats stats_;
  TreeNodeId span_root_ = -1;
};

// Builds the split tree of a connected graph by inserting vertices in BFS
// order.  Returns nullopt and sets `failed` to the first vertex whose
// insertion is rejected when g is not distance hereditary.
std::optional<SplitForest> build_incremental(const Graph& g, Vertex* failed = nullptr);
// Component-wise variant for arbitrary graphs.
std::optional<SplitForest> build_forest(const Graph& g, Vertex* failed = nullptr);

}  // namespace splitdh
