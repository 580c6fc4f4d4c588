#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/glt.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/split_tree.hpp"

namespace splitdh {

// Letters of a path word: K clique; S star whose centre is off the path;
// Sx / Sy star whose centre lies toward x / toward y.
enum class Letter : std::uint8_t { K, S, Sx, Sy };
using Word = std::vector<Letter>;

std::string word_string(const Word& w);
// Parses concatenated letters such as "SxSKSy"; throws on bad input.
Word parse_word(const std::string& s);
// No factor KK, SxSx, SySy, SyS or SSx.
bool is_reduced_word(const Word& w);
bool has_letter_s(const Word& w);

// Word read along the tree path between the leaves of x and y.
struct PathWord {
  Word letters;
  std::vector<TreeNodeId> nodes;  // internal nodes of the path, x side first
  TreeNodeId leaf_x = -1;
  TreeNodeId leaf_y = -1;
  bool truncated = false;       // path has more than four internal nodes
  bool same_component = true;
  std::string str() const { return truncated ? word_string(letters) + "..." : word_string(letters); }
};

// Reads at most five ancestors from each leaf, so the cost is bounded.
PathWord path_word(const SplitForest& f, Vertex x, Vertex y);

enum class EdgeMode : std::uint8_t { Insert, Delete };
const char* to_string(EdgeMode m);

// One row of a word table: the insertion word on the left, the deletion
// word on the right, each optionally framed by an extreme Sx / Sy.
struct TableRow {
  std::string insert_core;
  std::string delete_core;
  bool lead_sx = true;
  bool trail_sy = true;
};

struct WordVerdictTable {
  std::string name;
  std::vector<TableRow> rows;
  // Row index whose side for `mode` matches w, or -1.
  int match(const Word& w, EdgeMode mode) const;
  // Words of length <= max_len (over all letters) matched by the table.
  std::vector<Word> words(EdgeMode mode, int max_len) const;
};

const WordVerdictTable& dh_table();
const WordVerdictTable& cograph_table();
const WordVerdictTable& tlp_table();

struct EdgeResult {
  bool accept = false;
  std::string reason;
  PathWord word;
  int row = -1;           // matched table row
  std::string image;      // word of the rewritten path between x and y
  bool disconnected = false;
  bool rebuilt = false;   // handled outside the constant-time path
  std::vector<ComponentId> components;  // components touched
  std::optional<TreeRoot> root;         // cograph layer
  bool root_fallback = false;
};

// Throws std::invalid_argument for unknown vertices, x == y, or a mode that
// does not fit the current adjacency.  The forest is unchanged on rejection.
EdgeResult dh_edge_insert(SplitForest& f, Vertex x, Vertex y);
EdgeResult dh_edge_delete(SplitForest& f, Vertex x, Vertex y);
// `root` is the tree-root of the component of x (computed when nullopt).
EdgeResult cograph_edge_modify(SplitForest& f, const std::optional<TreeRoot>& root, Vertex x, Vertex y,
                               EdgeMode mode);
EdgeResult tlp_edge_modify(SplitForest& f, Vertex x, Vertex y, EdgeMode mode);

// Caterpillar of ternary nodes realising w between leaves "x" and "y"; the
// leaf hanging from the i-th node is "z<i>" (1-based).
glt::GraphLabelledTree word_to_caterpillar(const Word& w);
Graph word_graph(const Word& w);

// Whether G_w + xy (insert) or G_w - xy (delete) stays distance hereditary.
// Words where the mode does not apply (xy already present, resp. absent)
// count as safe.
bool word_safe(const Word& w, EdgeMode mode);

struct SubwordWitness {
  Word subword;
  std::string kind;  // hole, gem, house or domino
};

// Smallest S-maintained subword of w whose caterpillar graph becomes a
// forbidden induced subgraph after the modification.  Ties between subwords
// of equal length go to the kind listed first among hole, gem, house, domino.
std::optional<SubwordWitness> forbidden_subword_scan(const Word& w, EdgeMode mode);

// Minimal forbidden words up to max_len letters, regenerated from the
// caterpillar graphs: forbidden words none of whose proper subwords is
// forbidden.
std::vector<Word> forbidden_subwords(EdgeMode mode, int max_len);

}  // namespace splitdh
