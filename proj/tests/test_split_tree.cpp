#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "splitdh/glt.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/split_tree.hpp"

using namespace splitdh;

namespace {

std::string text_of(const SplitForest& f) {
  std::ostringstream out;
  f.write_text(out);
  return out.str();
}

Graph plus_vertex(const Graph& g, const std::vector<Vertex>& s) {
  Graph h = g;
  const Vertex x = h.add_vertex("x");
  for (Vertex v : s) h.add_edge(x, v);
  return h;
}

SplitForest build_ok(const Graph& g) {
  auto f = build_incremental(g);
  REQUIRE(f);
  return *f;
}

}  // namespace

TEST_CASE("star tree of a path on three vertices") {
  Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}});
  SplitForest f = build_ok(g);
  CHECK(f.internal_node_count() == 1);
  CHECK(f.to_graph().same_as(g));
  const TreeNode& root = f.node(f.component_root(f.components()[0]));
  CHECK(root.kind == NodeKind::Star);
  CHECK(root.centre == f.leaf_of(g.id("b")));
}

TEST_CASE("inserting a vertex on both ends of a P3 gives C4") {
  Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}});
  SplitForest f = build_ok(g);
  auto res = f.insert_vertex("x", {g.id("a"), g.id("c")});
  REQUIRE(res.verdict.accept);
  CHECK(res.report.update_case == 1);
  CHECK(res.report.preprocess == 0);
  Graph c4 = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "x"}, {"x", "a"}});
  CHECK(f.to_graph().same_as(c4));
  CHECK(f.check_invariants().empty());
}

TEST_CASE("P4 with both ends as neighbourhood is rejected") {
  Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}});
  SplitForest f = build_ok(g);
  const std::string before = text_of(f);
  auto res = f.insert_vertex("x", {g.id("a"), g.id("d")});
  CHECK_FALSE(res.verdict.accept);
  CHECK(text_of(f) == before);
  const SpanView view = f.spanning_subtree({g.id("a"), g.id("d")});
  CHECK(view.nodes.size() == 4);
  int partial = 0;
  for (auto [u, a] : f.classify_access(view)) partial += a == Access::Partially ? 1 : 0;
  CHECK(partial == 2);
}

TEST_CASE("universal vertex on a triangle stays one clique") {
  Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  SplitForest f = build_ok(g);
  auto res = f.insert_vertex("x", {0, 1, 2});
  REQUIRE(res.verdict.accept);
  CHECK(res.report.update_case == 2);
  CHECK(f.internal_node_count() == 1);
  CHECK(f.node(f.component_root(f.components()[0])).kind == NodeKind::Clique);
}

TEST_CASE("pendant on an edge promotes to a star") {
  SplitForest f;
  Vertex a = f.insert_vertex("a", {}).report.vertex;
  Vertex b = f.insert_vertex("b", {a}).report.vertex;
  f.insert_vertex("x", {a});
  const TreeNode& root = f.node(f.component_root(f.component_of(b)));
  CHECK(root.kind == NodeKind::Star);
  CHECK(root.centre == f.leaf_of(a));
}

TEST_CASE("deletions") {
  SUBCASE("C4 minus a vertex is P3") {
    Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
    SplitForest f = build_ok(g);
    auto res = f.delete_vertex(g.id("d"));
    CHECK_FALSE(res.disconnected);
    CHECK(f.internal_node_count() == 1);
    CHECK(f.check_invariants().empty());
    CHECK(f.to_graph().same_as(Graph::from_edges({{"a", "b"}, {"b", "c"}})));
  }
  SUBCASE("middle of P3 disconnects") {
    Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}});
    SplitForest f = build_ok(g);
    auto res = f.delete_vertex(g.id("b"));
    CHECK(res.disconnected);
    CHECK(f.components().size() == 2);
    CHECK(f.check_invariants().empty());
  }
}

TEST_CASE("static construction agrees with the oracle and the brute-force tree") {
  for (int n = 1; n <= 7; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      Vertex failed = -1;
      auto f = build_incremental(g, &failed);
      REQUIRE(f.has_value() == is_dh_oracle(g));
      if (!f) continue;
      CHECK(f->check_invariants().empty());
      CHECK(f->to_graph().same_as(g));
      if (n >= 3) CHECK(f->to_glt(f->components()[0]).named_form() == glt::split_tree_bruteforce(g).named_form());
      // Tree-size bound for every neighbourhood (internal nodes).
      for (Vertex v : g.vertices()) {
        std::vector<Vertex> nb(g.neighbors(v).begin(), g.neighbors(v).end());
        if (nb.size() < 2) continue;
        const SpanView view = f->spanning_subtree(nb);
        CHECK(static_cast<int>(view.nodes.size() - nb.size()) <= 2 * static_cast<int>(nb.size()));
      }
    }
}

TEST_CASE("exhaustive vertex insertion on DH graphs up to five vertices") {
  for (int n = 1; n <= 5; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      if (!is_dh_oracle(g)) continue;
      for (unsigned mask = 1; mask < (1U << n); ++mask) {
        std::vector<Vertex> s;
        for (int i = 0; i < n; ++i)
          if ((mask >> i) & 1U) s.push_back(i);
        SplitForest f = build_ok(g);
        const std::string before = text_of(f);
        const Graph h = plus_vertex(g, s);
        auto res = f.insert_vertex("x", s);
        REQUIRE(res.verdict.accept == is_dh_oracle(h));
        if (res.verdict.accept) {
          CHECK(f.check_invariants().empty());
          CHECK(f.to_graph().same_as(h));
          CHECK(f.last_stats().marked <= 4 * static_cast<int>(s.size()));
          CHECK(f.last_stats().touched <= 8 * static_cast<int>(s.size()));
        } else {
          CHECK(text_of(f) == before);
        }
      }
    }
}

TEST_CASE("every single-vertex deletion on DH graphs up to six vertices") {
  for (int n = 2; n <= 6; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      if (!is_dh_oracle(g)) continue;
      for (Vertex x : g.vertices()) {
        SplitForest f = build_ok(g);
        f.delete_vertex(x);
        std::vector<Vertex> keep;
        for (Vertex v : g.vertices())
          if (v != x) keep.push_back(v);
        CHECK(f.check_invariants().empty());
        CHECK(f.to_graph().same_as(g.induced(keep)));
      }
    }
}

TEST_CASE("the subtree spanning a neighbourhood can exceed twice its size") {
  auto internal = [](SplitForest& f, const Graph& g, const std::string& x) {
    std::vector<Vertex> s;
    for (Vertex u : g.neighbors(g.id(x))) s.push_back(*f.find(g.name(u)));
    const SpanView view = f.spanning_subtree(s);
    int n = 0;
    for (TreeNodeId u : view.nodes) n += f.node(u).kind == NodeKind::Leaf ? 0 : 1;
    return std::pair<int, int>{n, static_cast<int>(view.nodes.size())};
  };
  // P5 with x in the middle: three stars between the two neighbours.
  const Graph p5 = Graph::from_edges({{"a", "b"}, {"b", "x"}, {"x", "c"}, {"c", "d"}});
  auto f = build_incremental(p5);
  REQUIRE(f);
  CHECK(internal(*f, p5, "x") == std::pair<int, int>{3, 5});

  // The node holding v3 has degree two in the spanning subtree, which gives
  // 3 * 4 - 3 internal nodes.
  const Graph g = Graph::from_edges({{"v0", "v1"}, {"v0", "v3"}, {"v0", "v4"}, {"v0", "v5"}, {"v0", "v8"},
                                     {"v1", "v2"}, {"v1", "v3"}, {"v1", "v6"}, {"v1", "v9"}, {"v2", "v4"},
                                     {"v3", "v4"}, {"v3", "v6"}, {"v4", "v6"}, {"v4", "v7"}, {"v5", "v6"},
                                     {"v6", "v10"}});
  auto h = build_incremental(g);
  REQUIRE(h);
  CHECK(internal(*h, g, "v3").first == 9);
  std::vector<Vertex> s;
  for (Vertex u : g.neighbors(g.id("v3"))) s.push_back(*h->find(g.name(u)));
  const SpanView view = h->spanning_subtree(s);
  const TreeNodeId holder = h->node(h->leaf_of(*h->find("v3"))).parent;
  const auto at = std::find(view.nodes.begin(), view.nodes.end(), holder);
  REQUIRE(at != view.nodes.end());
  CHECK(view.degree[at - view.nodes.begin()] == 2);
}
