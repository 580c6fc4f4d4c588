#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitdh/graph.hpp"
#include "splitdh/split_tree.hpp"

namespace splitdh {

// Tree-root of a cograph's split tree: a clique node {a}, or a tree edge
// {a, b} whose star endpoints aim their centres at each other.  One-vertex
// components use {leaf}; two-vertex components use the leaf-leaf edge.
struct TreeRoot {
  TreeNodeId a = -1;
  TreeNodeId b = -1;
  bool is_edge() const { return b >= 0; }
  bool contains(TreeNodeId u) const { return u >= 0 && (u == a || u == b); }
  bool operator==(const TreeRoot& o) const {
    return (a == o.a && b == o.b) || (a == o.b && b == o.a);
  }
};

// Tree-root of component c when every star is oriented toward one; a clique
// root is preferred over an edge.  nullopt when c is not a cograph's tree.
std::optional<TreeRoot> is_cograph_tree(const SplitForest& f, ComponentId c);

// Star nodes form a connected subtree and every star centre faces a leaf or
// a clique.
bool is_3lp_tree(const SplitForest& f, ComponentId c);

struct ClassInsertResult {
  bool accept = false;     // G + (x, S) is in the class and x was inserted
  bool dh_accept = false;  // G + (x, S) is distance hereditary
  std::string reason;
  InsertReport report;
  std::optional<TreeRoot> root;  // cograph layer: tree-root after insertion
  bool root_fallback = false;    // tree-root had to be recomputed globally
};

// `root` is the current tree-root of the component hit by S (computed when
// nullopt).  The forest is unchanged on rejection.
ClassInsertResult cograph_insert_vertex(SplitForest& f, const std::optional<TreeRoot>& root,
                                        const std::string& name, const std::vector<Vertex>& s);
ClassInsertResult tlp_insert_vertex(SplitForest& f, const std::string& name, const std::vector<Vertex>& s);

struct ClassDeleteResult {
  DeleteResult deletion;
  // Cograph layer: tree-root of every component touched by the deletion.
  std::vector<std::pair<ComponentId, TreeRoot>> roots;
  bool root_fallback = false;
};

// Deletes x.  With cls == "cograph", the tree-root of x's component is
// repaired locally from `root` (computed when nullopt).
ClassDeleteResult delete_vertex_class(SplitForest& f, Vertex x, const std::string& cls,
                                      const std::optional<TreeRoot>& root = std::nullopt);

// Canonical code of component c: AHU encoding rooted at the tree centre.
// Alphabet: V (one vertex), E (two vertices), L leaf, K(...) clique,
// S^(...) star whose centre faces the parent, S(*c;...) star whose centre
// faces child c.  Children are sorted; a bicentral tree takes the smaller of
// its two rooted codes.
std::string canonical_code(const SplitForest& f, ComponentId c);

// Isomorphism of connected distance-hereditary graphs via canonical codes.
// Throws std::invalid_argument on disconnected or non-DH input.
bool isomorphic_dh(const Graph& g1, const Graph& g2);

// Tree-root found among candidates near `seeds`, given that every star
// outside `seeds` and off the path from `ref` (a node or tree edge) to the
// candidate is oriented toward `ref`.  nullopt when no nearby candidate fits.
std::optional<TreeRoot> local_tree_root(const SplitForest& f, std::vector<TreeNodeId> ref,
                                        std::vector<TreeNodeId> seeds);

// Tree path between two nodes of the same component (inclusive).
std::vector<TreeNodeId> tree_path(const SplitForest& f, TreeNodeId a, TreeNodeId b);

}  // namespace splitdh
