#include <doctest.h>

#include <random>
#include <sstream>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/session.hpp"

using namespace splitdh;

namespace {

std::vector<ScriptCommand> script(const std::string& text) {
  std::istringstream in(text);
  return parse_script(in);
}

const std::vector<std::string> kAll = {"dh", "cograph", "3lp"};

}  // namespace

TEST_CASE("script parsing") {
  const auto cmds = script(
      "# build a triangle\n"
      "addv a :\n"
      "addv b : a\n"
      "addv c : a b   # trailing comment\n"
      "dele a b\n"
      "expect dh yes\n"
      "rebuild\n");
  REQUIRE(cmds.size() == 6);
  CHECK(cmds[0].op == ScriptOp::AddVertex);
  CHECK(cmds[0].neighbors.empty());
  CHECK(cmds[2].neighbors == std::vector<std::string>{"a", "b"});
  CHECK(cmds[2].line == 4);
  CHECK(cmds[3].op == ScriptOp::DeleteEdge);
  CHECK(cmds[4].cls == "dh");
  CHECK(cmds[4].expect_yes);
  CHECK(cmds[5].op == ScriptOp::Rebuild);
  CHECK(script("").empty());

  auto error_line = [](const std::string& text) {
    try {
      script(text);
    } catch (const ScriptError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("addv a :\nfrob a\n") == 2);
  CHECK(error_line("addv a b\n") == 1);
  CHECK(error_line("\n\nexpect tree yes\n") == 3);
  CHECK(error_line("expect dh maybe\n") == 1);
  CHECK(error_line("adde a a\n") == 1);
  CHECK(error_line("addv a : b b\n") == 1);
  CHECK(error_line("delv\n") == 1);
}

TEST_CASE("triangle minus an edge is accepted everywhere") {
  const RunReport r = run_script(Graph(), script("addv a :\naddv b : a\naddv c : a b\ndele a b\nexpect dh yes\n"
                                                 "expect cograph yes\nexpect 3lp yes\n"),
                                 kAll, true);
  CHECK(r.ok());
  for (const auto& s : r.steps)
    for (const auto& v : s.verdicts) {
      CHECK(v.accept);
      CHECK(v.oracle == std::optional<bool>(true));
    }
}

TEST_CASE("closing a P4 into a C4 is DH but not a 3-leaf power") {
  Session s(Graph(), kAll, true);
  RunReport r;
  for (const auto& c : script("addv a :\naddv b : a\naddv c : b\naddv d : c\nadde a d\nexpect dh yes\n"
                              "expect 3lp no\n"))
    r.steps.push_back(s.apply(c));
  CHECK(r.ok());
  const StepReport& close = r.steps[4];
  CHECK(close.verdict("dh")->accept);
  CHECK_FALSE(close.verdict("3lp")->accept);
  CHECK(s.in_class("3lp") == false);
  CHECK_FALSE(s.in_class("cograph"));  // P4 already left the cograph class
  CHECK(s.graph().edge_count() == 4);
  CHECK(s.forest().to_graph().same_as(s.graph()));
}

TEST_CASE("empty script gives an empty report") {
  const RunReport r = run_script(Graph(), {}, kAll);
  CHECK(r.steps.empty());
  CHECK(r.ok());
}

TEST_CASE("rejections are no-ops and expectations are enforced") {
  // C5 is not DH; closing the P5 must be rejected and change nothing.
  Graph p5 = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}});
  Session s(p5, kAll, true);
  const std::string before = canonical_code(s.forest(), s.forest().components().front());
  const StepReport close = s.apply(script("adde a e\n")[0]);
  CHECK_FALSE(close.verdict("dh")->accept);
  CHECK(close.failures.empty());
  CHECK(canonical_code(s.forest(), s.forest().components().front()) == before);
  CHECK(s.graph().same_as(p5));

  const auto bad = s.apply(script("expect dh yes\n")[0]);
  CHECK(bad.failures.size() == 1);
  CHECK(s.apply(script("adde a b\n")[0]).failures.size() == 1);      // already present
  CHECK(s.apply(script("delv zz\n")[0]).failures.size() == 1);       // unknown vertex
  CHECK(s.apply(script("addv a : b\n")[0]).failures.size() == 1);    // duplicate name
  CHECK_THROWS_AS(script("expect tree yes\n"), ScriptError);
}

TEST_CASE("downgraded classes come back after a rebuild") {
  Session s(Graph::from_edges({{"a", "b"}, {"b", "c"}}), {"cograph"});
  s.apply(script("addv d : c\n")[0]);  // P4
  CHECK_FALSE(s.in_class("cograph"));
  const StepReport out = s.apply(script("dele c d\n")[0]);
  CHECK_FALSE(out.verdict("cograph")->in_class);
  CHECK(s.apply(script("expect cograph yes\n")[0]).failures.size() == 1);
  s.rebuild();
  CHECK(s.in_class("cograph"));
  const StepReport back = s.apply(script("delv d\n")[0]);
  CHECK(back.verdict("cograph")->in_class);
  CHECK(s.forest().to_graph().same_as(s.graph()));
}

TEST_CASE("random sessions agree with the oracles") {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    Session s(random_dh_graph(8, rng), kAll, true);
    int next = 0;
    for (int step = 0; step < 30; ++step) {
      const auto vs = s.graph().vertices();
      std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
      const std::string x = s.graph().name(vs[pick(rng)]), y = s.graph().name(vs[pick(rng)]);
      std::string cmd;
      switch (rng() % 4) {
        case 0: {
          cmd = "addv n" + std::to_string(next++) + " :";
          for (Vertex v : vs)
            if (rng() % 3 == 0) cmd += " " + s.graph().name(v);
          break;
        }
        case 1:
          if (vs.size() > 3) cmd = "delv " + x;
          break;
        default:
          if (x != y) cmd = (s.graph().has_edge(s.graph().id(x), s.graph().id(y)) ? "dele " : "adde ") + x + " " + y;
      }
      if (cmd.empty()) continue;
      const StepReport r = s.apply(script(cmd)[0]);
      CHECK_MESSAGE(r.failures.empty(), cmd);
      REQUIRE(s.forest().to_graph().same_as(s.graph()));
      CHECK(s.forest().check_invariants().empty());
      if (rng() % 10 == 0) s.rebuild();
    }
  }
}

TEST_CASE("tree text dumps reload to the same graph") {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Graph g = random_dh_graph(12, rng);
    auto f = build_incremental(g);
    REQUIRE(f);
    std::stringstream text;
    f->write_text(text);
    const Graph back = graph_from_tree_text(text);
    CHECK(back.same_as(g));
    auto f2 = build_incremental(back);
    REQUIRE(f2);
    CHECK(canonical_code(*f2, f2->components().front()) == canonical_code(*f, f->components().front()));
  }
  std::stringstream k3;
  build_incremental(Graph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}}))->write_text(k3);
  int nodes = 0, leaves = 0;
  for (std::string line; std::getline(k3, line);) {
    nodes += line.find("node") != std::string::npos;
    leaves += line.find("leaf") != std::string::npos;
  }
  CHECK(nodes == 1);
  CHECK(leaves == 3);
}
