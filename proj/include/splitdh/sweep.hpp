#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "splitdh/edge_dynamic.hpp"
#include "splitdh/graph.hpp"

namespace splitdh {

// Outcome of one differential check: how many cases were compared, how many
// disagreed, and a description of the first disagreement.
struct SweepCheck {
  std::string name;
  long long cases = 0;
  long long divergences = 0;
  std::string witness;
  bool ok() const { return divergences == 0; }
};

struct SweepResult {
  std::vector<SweepCheck> checks;
  bool ok() const;
};

// "u-v u-w ..." over vertex names, with isolated vertices listed alone.
std::string graph_summary(const Graph& g);

// Connected test graphs on exactly n vertices: one per isomorphism class up
// to seven vertices, `samples` random connected graphs above.
std::vector<Graph> sweep_graphs(int n, int samples, std::mt19937& rng);

// Connected distance-hereditary graphs on exactly n vertices, one per
// isomorphism class, grown by pendant and twin additions from size n - 1.
std::vector<Graph> dh_graphs_up_to_iso(int n);

// Each check stops recording witnesses after the first divergence but keeps
// counting.  `threads` > 1 spreads independent graphs over worker threads.
struct SweepOptions {
  int n_max = 5;
  std::vector<std::string> classes = {"dh", "cograph", "3lp"};
  int samples = 200;  // random graphs per size above seven vertices
  std::uint32_t seed = 1;
  int threads = 1;
  int cunningham_orders = 20;
  int max_word_len = 6;
  // Replacement for the DH word table, for fault-injection tests.
  const WordVerdictTable* dh_table_override = nullptr;
};

// Inserting a new vertex next to every non-empty S in every connected DH
// graph on fewer than n_max vertices, against the class oracles.
SweepCheck check_vertex_insertions(const SweepOptions& opt);
// Toggling every vertex pair of every connected graph up to n_max vertices
// that belongs to the class, against the class oracles.
SweepCheck check_edge_modifications(const SweepOptions& opt);
// Word-table membership against word_safe for every reduced word.
SweepCheck check_word_table(const SweepOptions& opt);
// Random split orders give the same reduced tree.
SweepCheck check_split_uniqueness(const SweepOptions& opt);
// Splits read off the split tree equal the raw exhaustive enumeration.
SweepCheck check_split_enumeration(const SweepOptions& opt);
// Accessibility sets of two leaves meet iff the vertices are adjacent.
SweepCheck check_intersection_model(const SweepOptions& opt);
// Canonical code equality against permutation isomorphism.
SweepCheck check_isomorphism(const SweepOptions& opt);
// Modular decomposition and split tree conversions commute, and a cograph's
// split tree is its own modular graph-labelled tree.
SweepCheck check_modular_bridge(const SweepOptions& opt);

SweepResult oracle_sweep(const SweepOptions& opt);

void write_sweep(std::ostream& out, const SweepResult& r);

}  // namespace splitdh
