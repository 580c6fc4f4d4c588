#include <doctest.h>

#include <algorithm>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/glt.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/modular_bridge.hpp"
#include "splitdh/split_tree.hpp"

using namespace splitdh;

namespace {

Graph path(int n) {
  Graph g = Graph::with_vertices(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete(int n) {
  Graph g = Graph::with_vertices(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

ModularGLT from_md(const Graph& g) { return md_to_modular_glt(md_tree_bruteforce(g)); }

}  // namespace

TEST_CASE("modular decomposition of small graphs") {
  CHECK(md_tree_bruteforce(complete(3)).str() == "S(0,1,2)");
  const MDTree p4 = md_tree_bruteforce(path(4));
  REQUIRE(p4.nodes[0].kind == MDKind::Prime);
  CHECK(p4.nodes[0].children.size() == 4);
  CHECK(p4.nodes[0].quotient.edge_count() == 3);
  CHECK(md_tree_bruteforce(path(3)).str() == "S(1,P(0,2))");
  Graph two = Graph::with_vertices(2);
  CHECK(md_tree_bruteforce(two).str() == "P(0,1)");
  CHECK_THROWS_AS(md_tree_bruteforce(Graph()), std::invalid_argument);
}

TEST_CASE("modular graph-labelled trees of small graphs") {
  const ModularGLT k3 = from_md(complete(3));
  REQUIRE(k3.tree.internal_nodes().size() == 1);
  CHECK(k3.tree.classify(k3.tree.internal_nodes()[0]) == glt::LabelKind::Clique);
  CHECK_FALSE(k3.root_is_edge());

  const ModularGLT p3 = from_md(path(3));
  REQUIRE(p3.tree.internal_nodes().size() == 1);
  const glt::NodeId star = p3.tree.internal_nodes()[0];
  CHECK(p3.tree.classify(star) == glt::LabelKind::Star);
  CHECK(p3.root_is_edge());
  CHECK(p3.tree.accessibility_graph().same_as(path(3)));

  Graph two = Graph::with_vertices(2);
  CHECK_THROWS_AS(from_md(two), std::invalid_argument);

  const ModularGLT k4 = splittree_to_modular_glt(glt::split_tree_bruteforce(complete(4)));
  REQUIRE(k4.tree.internal_nodes().size() == 1);
  CHECK(k4.root_a == k4.tree.internal_nodes()[0]);
  CHECK_FALSE(k4.root_is_edge());
}

TEST_CASE("P4 is M-prime but has a split") {
  const ModularGLT a = from_md(path(4));
  const glt::GraphLabelledTree st = glt::split_tree_bruteforce(path(4));
  const ModularGLT b = splittree_to_modular_glt(st);
  REQUIRE(b.tree.internal_nodes().size() == 1);
  CHECK(b.tree.classify(b.root_a) == glt::LabelKind::Other);
  CHECK(a.named_form() == b.named_form());
  CHECK(satisfies_gallai(b));
  CHECK(st.internal_nodes().size() == 2);
  CHECK(modular_glt_to_splittree(a).named_form() == st.named_form());
}

TEST_CASE("a module absorbed by a star-join is recovered") {
  // The path 3-0-4-x with x replaced by the false twins 1 and 2.
  Graph g = Graph::from_edges({{"3", "0"}, {"0", "4"}, {"4", "1"}, {"4", "2"}});
  const glt::GraphLabelledTree st = glt::split_tree_bruteforce(g);
  CHECK(st.internal_nodes().size() == 2);
  const ModularGLT m = splittree_to_modular_glt(st);
  CHECK(m.tree.internal_nodes().size() == 2);
  CHECK(m.named_form() == from_md(g).named_form());
  CHECK(satisfies_gallai(m));
}

TEST_CASE("the conversions commute for every connected graph up to seven vertices") {
  int graphs = 0, differing = 0;
  for (int n = 1; n <= 7; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      ++graphs;
      const ModularGLT via_md = from_md(g);
      const glt::GraphLabelledTree st = glt::split_tree_bruteforce(g);
      const ModularGLT via_st = splittree_to_modular_glt(st);
      REQUIRE(via_md.named_form() == via_st.named_form());
      CHECK(satisfies_gallai(via_md));
      CHECK(via_md.tree.accessibility_graph().same_as(g));
      CHECK(via_md.tree.is_reduced());
      CHECK(modular_glt_to_splittree(via_md).named_form() == st.named_form());
      differing += via_md.tree.named_form() != st.named_form() ? 1 : 0;
    }
  CHECK(graphs == 1 + 1 + 2 + 6 + 21 + 112 + 853);
  CHECK(differing > 0);
}

TEST_CASE("M-prime labels are exactly the split-prime labels") {
  for (int n = 4; n <= 7; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      const MDTree md = md_tree_bruteforce(g);
      for (std::size_t u = 1; u < md.nodes.size(); ++u) {
        const MDNode& node = md.nodes[u];
        if (node.kind == MDKind::Leaf) continue;
        // Non-root label: the quotient plus a universal vertex.
        Graph label = node.quotient;
        const Vertex x = label.add_vertex("up");
        for (Vertex v : node.quotient.vertices()) label.add_edge(x, v);
        const bool split_prime = label.vertex_count() >= 4 && !glt::find_split_bruteforce(label);
        CHECK(split_prime == (node.kind == MDKind::Prime));
        CHECK(is_m_prime(node.quotient) == (node.kind == MDKind::Prime));
      }
    }
}

TEST_CASE("a cograph's split tree is its modular graph-labelled tree") {
  for (int n = 1; n <= 7; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      const glt::GraphLabelledTree st = glt::split_tree_bruteforce(g);
      const ModularGLT m = splittree_to_modular_glt(st);
      const bool fixed = st.is_clique_star() && m.tree.named_form() == st.named_form();
      CHECK(fixed == is_p4_free_oracle(g));
      if (!is_p4_free_oracle(g) || n < 2) continue;
      auto f = build_incremental(g);
      REQUIRE(f);
      const ComponentId c = f->components().front();
      const auto root = is_cograph_tree(*f, c);
      REQUIRE(root);
      // to_glt numbers nodes in component_nodes order.
      const glt::GraphLabelledTree t = f->to_glt(c);
      const std::vector<TreeNodeId> order = f->component_nodes(c);
      auto glt_id = [&](TreeNodeId u) {
        return static_cast<glt::NodeId>(std::find(order.begin(), order.end(), u) - order.begin());
      };
      ModularGLT expected{t, glt_id(root->a), root->is_edge() ? glt_id(root->b) : -1};
      CHECK(splittree_to_modular_glt(t).named_form() == expected.named_form());
    }
}
