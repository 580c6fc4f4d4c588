#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "splitdh/glt.hpp"
#include "splitdh/graph.hpp"

namespace splitdh {

enum class MDKind { Leaf, Series, Parallel, Prime };
const char* to_string(MDKind k);

struct MDNode {
  MDKind kind = MDKind::Leaf;
  std::string name;                // leaves only
  std::vector<int> children;       // ordered by smallest vertex
  std::vector<Vertex> vertices;    // sorted vertex set of the module
  Graph quotient;                  // internal nodes: vertex i stands for children[i]
};

// Modular decomposition tree; node 0 is the root.
struct MDTree {
  std::vector<MDNode> nodes;
  int root() const { return 0; }
  // Canonical text over vertex names, e.g. "S(a,P(b,c))".
  std::string str() const;
};

// Modular decomposition by exhaustive strong-module enumeration.  Throws
// std::invalid_argument above kOracleCap vertices or on an empty graph.
MDTree md_tree_bruteforce(const Graph& g);

// Graph-labelled tree with a root that is a node (root_b < 0) or a tree edge.
struct ModularGLT {
  glt::GraphLabelledTree tree;
  glt::NodeId root_a = -1;
  glt::NodeId root_b = -1;
  bool root_is_edge() const { return root_b >= 0; }
  // Canonical string: the tree's named form plus the leaf sets around the root.
  std::string named_form() const;
  void dump(std::ostream& out) const;
};

// Every non-root label gets a universal marker aimed at the parent; a binary
// root becomes the tree edge between its two children.  Throws
// std::invalid_argument when the graph is disconnected.
ModularGLT md_to_modular_glt(const MDTree& md);

// Substitutes the split tree of every decomposable label, then reduces.
glt::GraphLabelledTree modular_glt_to_splittree(const ModularGLT& m);

// Removes, while possible, nodes whose edges all lead to leaves except one
// behind a universal marker, joins the remaining nodes into one, and places
// the root where the universal markers converge.
ModularGLT splittree_to_modular_glt(const glt::GraphLabelledTree& t);

// Every non-root node has a universal marker toward the root whose removal
// leaves an M-prime or M-degenerate label, and the tree is reduced.
bool satisfies_gallai(const ModularGLT& m);

// M-prime: at least three vertices and only trivial modules.
bool is_m_prime(const Graph& g);

}  // namespace splitdh
