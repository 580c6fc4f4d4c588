#include <doctest.h>

#include <sstream>

#include "splitdh/edge_dynamic.hpp"
#include "splitdh/graph.hpp"
#include "splitdh/sweep.hpp"

using namespace splitdh;

TEST_CASE("the full sweep passes on graphs up to five vertices") {
  SweepOptions opt;
  opt.n_max = 5;
  opt.threads = 2;
  opt.cunningham_orders = 5;
  const SweepResult r = oracle_sweep(opt);
  std::ostringstream out;
  write_sweep(out, r);
  CHECK_MESSAGE(r.ok(), out.str());
  REQUIRE(r.checks.size() == 8);
  for (const SweepCheck& c : r.checks) CHECK_MESSAGE(c.cases > 0, c.name);
}

TEST_CASE("a one-vertex sweep passes vacuously") {
  SweepOptions opt;
  opt.n_max = 1;
  opt.max_word_len = 1;
  CHECK(oracle_sweep(opt).ok());
}

TEST_CASE("a corrupted word table is caught with a witness word") {
  WordVerdictTable broken = dh_table();
  broken.rows.erase(broken.rows.begin());  // drops SS / SySx
  SweepOptions opt;
  opt.max_word_len = 4;
  opt.dh_table_override = &broken;
  const SweepCheck c = check_word_table(opt);
  CHECK_FALSE(c.ok());
  CHECK(c.witness.find("word S") != std::string::npos);
  opt.dh_table_override = nullptr;
  CHECK(check_word_table(opt).ok());
}

TEST_CASE("grown distance-hereditary graph counts") {
  // Connected DH graphs: 1, 1, 2, 6, 18 (the 21 connected graphs on five
  // vertices minus C5, the house and the gem).
  CHECK(dh_graphs_up_to_iso(1).size() == 1);
  CHECK(dh_graphs_up_to_iso(3).size() == 2);
  CHECK(dh_graphs_up_to_iso(4).size() == 6);
  CHECK(dh_graphs_up_to_iso(5).size() == 18);
  int dh6 = 0;
  for (const Graph& g : connected_graphs_up_to_iso(6)) dh6 += is_dh_oracle(g) ? 1 : 0;
  CHECK(dh_graphs_up_to_iso(6).size() == static_cast<std::size_t>(dh6));
}
