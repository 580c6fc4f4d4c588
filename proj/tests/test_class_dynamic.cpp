#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/split_tree.hpp"

using namespace splitdh;

namespace {

Graph plus_vertex(const Graph& g, const std::vector<Vertex>& s) {
  Graph h = g;
  const Vertex x = h.add_vertex("x");
  for (Vertex v : s) h.add_edge(x, v);
  return h;
}

std::vector<Vertex> subset(int n, unsigned mask) {
  std::vector<Vertex> s;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1U) s.push_back(i);
  return s;
}

SplitForest build_ok(const Graph& g) {
  auto f = build_incremental(g);
  REQUIRE(f);
  return *f;
}

Graph permuted(const Graph& g, const std::vector<int>& perm) {
  Graph h = Graph::with_vertices(g.vertex_count());
  for (Vertex u : g.vertices())
    for (Vertex v : g.neighbors(u))
      if (u < v) h.add_edge(perm[u], perm[v]);
  return h;
}

}  // namespace

TEST_CASE("tree tests agree with the cograph and 3-leaf power oracles up to seven vertices") {
  for (int n = 1; n <= 7; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      auto f = build_incremental(g);
      if (!f) continue;
      const ComponentId c = f->components().front();
      CHECK(is_cograph_tree(*f, c).has_value() == is_p4_free_oracle(g));
      CHECK(is_3lp_tree(*f, c) == is_3lp_oracle(g));
    }
}

TEST_CASE("a leaf of a claw is not universal although its star is in the tree-root") {
  Graph g = Graph::from_edges({{"c", "a"}, {"c", "b"}, {"c", "d"}});
  SplitForest f = build_ok(g);
  const ComponentId c = f.components().front();
  const auto root = is_cograph_tree(f, c);
  REQUIRE(root);
  const TreeNodeId y = f.leaf_of(g.id("a"));
  CHECK(root->contains(f.node(y).parent));
  auto res = cograph_insert_vertex(f, root, "x", {g.id("a")});
  CHECK(res.dh_accept);
  CHECK_FALSE(res.accept);
  CHECK_FALSE(is_p4_free_oracle(plus_vertex(g, {g.id("a")})));
  auto ok = cograph_insert_vertex(f, root, "x", {g.id("c")});
  CHECK(ok.accept);
}

TEST_CASE("a pendant on an end of a P3 keeps a 3-leaf power") {
  Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}});
  SplitForest f = build_ok(g);
  const TreeNodeId w = f.node(f.leaf_of(g.id("a"))).parent;
  CHECK(f.node(w).centre != f.leaf_of(g.id("a")));
  auto res = tlp_insert_vertex(f, "x", {g.id("a")});
  CHECK(res.accept);
  CHECK(is_3lp_oracle(f.to_graph()));
}

TEST_CASE("cograph insertion agrees with the oracle and keeps the tree-root") {
  int accepted = 0, fallbacks = 0;
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      if (!is_p4_free_oracle(g)) continue;
      for (unsigned mask = 1; mask < (1U << n); ++mask) {
        const std::vector<Vertex> s = subset(n, mask);
        SplitForest f = build_ok(g);
        const ComponentId c = f.components().front();
        const Graph h = plus_vertex(g, s);
        auto res = cograph_insert_vertex(f, is_cograph_tree(f, c), "x", s);
        REQUIRE(res.accept == is_p4_free_oracle(h));
        CHECK(res.dh_accept == is_dh_oracle(h));
        if (!res.accept) {
          CHECK(f.to_graph().same_as(g));
          continue;
        }
        ++accepted;
        fallbacks += res.root_fallback ? 1 : 0;
        CHECK(f.check_invariants().empty());
        CHECK(f.to_graph().same_as(h));
        REQUIRE(res.root);
        CHECK(*res.root == *is_cograph_tree(f, f.component_of(res.report.vertex)));
      }
    }
  CHECK(accepted > 0);
  CHECK(fallbacks == 0);
}

TEST_CASE("3-leaf power insertion agrees with the oracle") {
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      if (!is_3lp_oracle(g)) continue;
      for (unsigned mask = 1; mask < (1U << n); ++mask) {
        const std::vector<Vertex> s = subset(n, mask);
        SplitForest f = build_ok(g);
        const Graph h = plus_vertex(g, s);
        auto res = tlp_insert_vertex(f, "x", s);
        REQUIRE(res.accept == is_3lp_oracle(h));
        CHECK(f.to_graph().same_as(res.accept ? h : g));
      }
    }
}

TEST_CASE("cograph deletion repairs the tree-root locally") {
  int fallbacks = 0;
  for (int n = 2; n <= 7; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      if (!is_p4_free_oracle(g)) continue;
      for (Vertex x : g.vertices()) {
        SplitForest f = build_ok(g);
        auto res = delete_vertex_class(f, x, "cograph");
        fallbacks += res.root_fallback ? 1 : 0;
        CHECK(f.check_invariants().empty());
        CHECK(res.roots.size() == res.deletion.components.size());
        for (auto [k, r] : res.roots) CHECK(r == *is_cograph_tree(f, k));
      }
    }
  CHECK(fallbacks == 0);
}

TEST_CASE("random class-restricted sequences up to ten vertices") {
  std::mt19937 rng(11);
  for (const std::string cls : {"cograph", "3lp"}) {
    for (int round = 0; round < 150; ++round) {
      SplitForest f;
      std::map<ComponentId, TreeRoot> roots;
      int next = 0;
      for (int step = 0; step < 30; ++step) {
        const std::vector<Vertex> vs = f.vertices();
        const bool del = !vs.empty() && (vs.size() >= 10 || rng() % 4 == 0);
        if (del) {
          const Vertex x = vs[rng() % vs.size()];
          const ComponentId c = f.component_of(x);
          std::optional<TreeRoot> r;
          if (roots.count(c)) r = roots[c];
          auto res = delete_vertex_class(f, x, cls == "cograph" ? "cograph" : "", r);
          CHECK_FALSE(res.root_fallback);
          roots.erase(c);
          for (auto [k, rk] : res.roots) roots[k] = rk;
        } else {
          std::vector<Vertex> s;
          for (Vertex v : vs)
            if (rng() % 2) s.push_back(v);
          const Graph before = f.to_graph();
          Graph h = before;
          const Vertex hx = h.add_vertex("v" + std::to_string(next));
          for (Vertex v : s) h.add_edge(hx, h.id(f.name(v)));
          if (cls == "cograph") {
            std::optional<TreeRoot> r;
            if (!s.empty() && roots.count(f.component_of(s[0]))) r = roots[f.component_of(s[0])];
            std::set<ComponentId> touched;
            for (Vertex v : s) touched.insert(f.component_of(v));
            auto res = cograph_insert_vertex(f, r, "v" + std::to_string(next), s);
            REQUIRE(res.accept == in_class_oracle(h, "cograph"));
            CHECK_FALSE(res.root_fallback);
            if (res.accept) {
              for (ComponentId k : touched) roots.erase(k);
              roots[f.component_of(res.report.vertex)] = *res.root;
            }
          } else {
            auto res = tlp_insert_vertex(f, "v" + std::to_string(next), s);
            REQUIRE(res.accept == in_class_oracle(h, "3lp"));
          }
          ++next;
        }
        REQUIRE(f.check_invariants().empty());
        if (cls == "cograph")
          for (ComponentId k : f.components()) {
            REQUIRE(roots.count(k));
            CHECK(roots[k] == *is_cograph_tree(f, k));
          }
      }
    }
  }
}

TEST_CASE("canonical codes separate the isomorphism classes up to seven vertices") {
  std::mt19937 rng(5);
  for (int n = 1; n <= 7; ++n) {
    std::set<std::string> seen;
    for (const Graph& g : connected_graphs_up_to_iso(n)) {
      auto f = build_incremental(g);
      if (!f) continue;
      const std::string code = canonical_code(*f, f->components().front());
      CHECK(seen.insert(code).second);
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      const Graph h = permuted(g, perm);
      CHECK(isomorphic_dh(g, h));
      auto fh = build_incremental(h);
      CHECK(canonical_code(*fh, fh->components().front()) == code);
    }
  }
}

TEST_CASE("isomorphism rejects graphs outside the class") {
  Graph c5 = Graph::with_vertices(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  CHECK_THROWS_AS(isomorphic_dh(c5, c5), std::invalid_argument);
  CHECK_FALSE(isomorphic_dh(Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}}),
                            Graph::from_edges({{"a", "b"}, {"a", "c"}, {"a", "d"}})));
}
