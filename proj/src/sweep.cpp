#include "splitdh/sweep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "splitdh/class_dynamic.hpp"
#include "splitdh/glt.hpp"
#include "splitdh/modular_bridge.hpp"
#include "splitdh/split_tree.hpp"

namespace splitdh {

namespace {

struct Tally {
  long long cases = 0;
  long long divergences = 0;
  std::string witness;

  void compare(bool library, bool oracle, const std::function<std::string()>& describe) {
    ++cases;
    if (library == oracle) return;
    if (divergences++ == 0)
      witness = describe() + ": library " + (library ? "yes" : "no") + ", oracle " + (oracle ? "yes" : "no");
  }
  void expect(bool holds, const std::function<std::string()>& describe) {
    ++cases;
    if (!holds && divergences++ == 0) witness = describe();
  }
};

// Runs fn over every graph, spreading graphs across threads, and merges the
// tallies in graph order so the reported witness is deterministic.
SweepCheck run_over(const std::string& name, const std::vector<Graph>& graphs, int threads,
                    const std::function<void(const Graph&, Tally&)>& fn) {
  std::vector<Tally> tallies(graphs.size());
  auto guarded = [&](std::size_t i) {
    try {
      fn(graphs[i], tallies[i]);
    } catch (const std::exception& e) {
      tallies[i].expect(false, [&] { return std::string("exception '") + e.what() + "' on " + graph_summary(graphs[i]); });
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(graphs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < graphs.size(); ++i) guarded(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < graphs.size(); i += workers) guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  SweepCheck out{name, 0, 0, {}};
  for (const Tally& t : tallies) {
    if (t.divergences > 0 && out.divergences == 0) out.witness = t.witness;
    out.cases += t.cases;
    out.divergences += t.divergences;
  }
  return out;
}

std::vector<Graph> graphs_up_to(int n_max, int min_n, int samples, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Graph> out;
  for (int n = std::max(1, min_n); n <= n_max; ++n)
    for (Graph& g : sweep_graphs(n, samples, rng)) out.push_back(std::move(g));
  return out;
}

bool tracked(const SweepOptions& opt, const std::string& cls) {
  return std::find(opt.classes.begin(), opt.classes.end(), cls) != opt.classes.end();
}

bool in_class(const Graph& g, const std::string& cls) {
  if (cls == "dh") return is_dh_oracle(g);
  if (cls == "cograph") return is_p4_free_oracle(g);
  return is_3lp_oracle(g);
}

std::string names_of(const Graph& g, const std::vector<Vertex>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + g.name(vs[i]);
  return s + "}";
}

}  // namespace

bool SweepResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SweepCheck& c) { return c.ok(); });
}

std::string graph_summary(const Graph& g) {
  std::string s;
  for (Vertex v : g.vertices())
    if (g.degree(v) == 0) s += (s.empty() ? "" : " ") + g.name(v);
  for (auto [u, v] : g.edges()) s += (s.empty() ? "" : " ") + g.name(u) + "-" + g.name(v);
  return s;
}

std::vector<Graph> sweep_graphs(int n, int samples, std::mt19937& rng) {
  if (n <= 7) return connected_graphs_up_to_iso(n);
  if (n > kOracleCap) throw std::invalid_argument("sweep size exceeds the oracle cap");
  std::vector<Graph> out;
  std::bernoulli_distribution coin(0.4);
  while (static_cast<int>(out.size()) < samples) {
    Graph g = Graph::with_vertices(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) g.add_edge(i, j);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Graph> dh_graphs_up_to_iso(int n) {
  if (n < 1) return {};
  std::vector<Graph> level{Graph::with_vertices(1)};
  for (int k = 2; k <= n; ++k) {
    std::vector<Graph> next;
    std::unordered_set<std::uint64_t> seen;
    for (const Graph& g : level)
      for (Vertex v : g.vertices())
        for (int step = 0; step < 3; ++step) {
          Graph h = g;
          const Vertex x = h.add_vertex(std::to_string(k - 1));
          if (step == 0) h.add_edge(x, v);
          for (Vertex u : g.neighbors(v))
            if (step > 0) h.add_edge(x, u);
          if (step == 2) h.add_edge(x, v);
          if (h.degree(x) == 0) continue;
          if (seen.insert(canonical_dense_code(DenseGraph::from(h))).second) next.push_back(std::move(h));
        }
    level = std::move(next);
  }
  return level;
}

SweepCheck check_vertex_insertions(const SweepOptions& opt) {
  const auto graphs = graphs_up_to(opt.n_max - 1, 1, opt.samples, opt.seed);
  return run_over("vertex insertion", graphs, opt.threads, [&](const Graph& g, Tally& t) {
    if (!is_dh_oracle(g)) return;
    auto f = build_incremental(g);
    if (!f) {
      t.expect(false, [&] { return "no split tree for DH graph " + graph_summary(g); });
      return;
    }
    const int n = g.vertex_count();
    const bool cograph = tracked(opt, "cograph") && is_p4_free_oracle(g);
    const bool tlp = tracked(opt, "3lp") && is_3lp_oracle(g);
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      std::vector<Vertex> s;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1U) s.push_back(i);
      Graph h = g;
      const Vertex x = h.add_vertex("x");
      for (Vertex v : s) h.add_edge(x, v);
      auto describe = [&](const std::string& cls) {
        return [&, cls] { return cls + " insert x:" + names_of(g, s) + " into " + graph_summary(g); };
      };
      SplitForest copy = *f;
      t.compare(copy.check_vertex_insertion(s).accept, is_dh_oracle(h), describe("dh"));
      if (cograph) {
        SplitForest c = *f;
        t.compare(cograph_insert_vertex(c, std::nullopt, "x", s).accept, is_p4_free_oracle(h), describe("cograph"));
      }
      if (tlp) {
        SplitForest c = *f;
        t.compare(tlp_insert_vertex(c, "x", s).accept, is_3lp_oracle(h), describe("3lp"));
      }
    }
  });
}

SweepCheck check_edge_modifications(const SweepOptions& opt) {
  const auto graphs = graphs_up_to(opt.n_max, 2, opt.samples, opt.seed + 1);
  return run_over("edge modification", graphs, opt.threads, [&](const Graph& g, Tally& t) {
    if (!is_dh_oracle(g)) return;
    auto f = build_incremental(g);
    if (!f) return t.expect(false, [&] { return "no split tree for DH graph " + graph_summary(g); });
    for (const std::string& cls : opt.classes) {
      if (!in_class(g, cls)) continue;
      for (Vertex x : g.vertices())
        for (Vertex y : g.vertices()) {
          if (x >= y) continue;
          const bool insert = !g.has_edge(x, y);
          Graph h = g;
          if (insert) h.add_edge(x, y);
          else h.remove_edge(x, y);
          SplitForest c = *f;
          const EdgeMode mode = insert ? EdgeMode::Insert : EdgeMode::Delete;
          EdgeResult r;
          if (cls == "cograph") r = cograph_edge_modify(c, std::nullopt, x, y, mode);
          else if (cls == "3lp") r = tlp_edge_modify(c, x, y, mode);
          else r = insert ? dh_edge_insert(c, x, y) : dh_edge_delete(c, x, y);
          t.compare(r.accept, in_class_oracle(h, cls), [&] {
            return cls + (insert ? " adde " : " dele ") + g.name(x) + " " + g.name(y) + " (word " + r.word.str() +
                   ") on " + graph_summary(g);
          });
          if (r.accept)
            t.expect(c.to_graph().same_as(h), [&] { return cls + " rewrite of " + g.name(x) + g.name(y) +
                                                          " gives the wrong graph on " + graph_summary(g); });
        }
    }
  });
}

SweepCheck check_word_table(const SweepOptions& opt) {
  const WordVerdictTable& table = opt.dh_table_override ? *opt.dh_table_override : dh_table();
  Tally t;
  Word w;
  std::function<void()> rec = [&] {
    if (is_reduced_word(w) && !w.empty())
      for (EdgeMode mode : {EdgeMode::Insert, EdgeMode::Delete}) {
        if (has_letter_s(w) != (mode == EdgeMode::Insert)) continue;
        t.compare(table.match(w, mode) >= 0, word_safe(w, mode),
                  [&] { return std::string(to_string(mode)) + " word " + word_string(w); });
      }
    if (static_cast<int>(w.size()) == opt.max_word_len) return;
    for (Letter l : {Letter::K, Letter::S, Letter::Sx, Letter::Sy}) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
  return SweepCheck{"word table", t.cases, t.divergences, t.witness};
}

SweepCheck check_split_uniqueness(const SweepOptions& opt) {
  const auto graphs = graphs_up_to(opt.n_max, 1, opt.samples, opt.seed + 2);
  return run_over("Cunningham uniqueness", graphs, opt.threads, [&](const Graph& g, Tally& t) {
    const std::string reference = glt::split_tree_bruteforce(g).named_form();
    std::mt19937 rng(opt.seed ^ static_cast<std::uint32_t>(g.edge_count() * 131 + g.vertex_count()));
    for (int k = 0; k < opt.cunningham_orders; ++k) {
      const glt::GraphLabelledTree t2 = glt::split_tree_bruteforce(g, &rng);
      t.expect(t2.named_form() == reference && t2.is_reduced(),
               [&] { return "split order " + std::to_string(k) + " differs on " + graph_summary(g); });
    }
  });
}

SweepCheck check_split_enumeration(const SweepOptions& opt) {
  const auto graphs = graphs_up_to(opt.n_max, 1, opt.samples, opt.seed + 3);
  return run_over("split enumeration", graphs, opt.threads, [&](const Graph& g, Tally& t) {
    auto fast = glt::enumerate_splits(g);
    auto raw = glt::enumerate_splits_raw(g);
    std::sort(fast.begin(), fast.end());
    std::sort(raw.begin(), raw.end());
    t.expect(fast == raw, [&] {
      return "split lists differ (" + std::to_string(fast.size()) + " vs " + std::to_string(raw.size()) + ") on " +
             graph_summary(g);
    });
  });
}

SweepCheck check_intersection_model(const SweepOptions& opt) {
  std::vector<Graph> graphs;
  for (int n = 1; n <= opt.n_max; ++n)
    for (Graph& g : dh_graphs_up_to_iso(n)) graphs.push_back(std::move(g));
  return run_over("intersection model", graphs, opt.threads, [&](const Graph& g, Tally& t) {
    auto f = build_incremental(g);
    if (!f) return t.expect(false, [&] { return "no split tree for " + graph_summary(g); });
    std::map<Vertex, std::set<std::pair<Vertex, Vertex>>> sets;
    for (Vertex v : g.vertices())
      for (auto [a, b] : f->accessibility_set(v)) sets[v].insert({std::min(a, b), std::max(a, b)});
    for (Vertex u : g.vertices())
      for (Vertex v : g.vertices()) {
        if (u >= v) continue;
        std::vector<std::pair<Vertex, Vertex>> common;
        std::set_intersection(sets[u].begin(), sets[u].end(), sets[v].begin(), sets[v].end(),
                              std::back_inserter(common));
        t.compare(!common.empty(), g.has_edge(u, v),
                  [&] { return "accessibility of " + g.name(u) + "," + g.name(v) + " in " + graph_summary(g); });
      }
  });
}

SweepCheck check_isomorphism(const SweepOptions& opt) {
  std::vector<std::vector<Graph>> by_size;
  for (int n = 1; n <= opt.n_max; ++n) by_size.push_back(dh_graphs_up_to_iso(n));
  std::vector<Graph> graphs;
  for (const auto& level : by_size)
    for (const Graph& g : level) graphs.push_back(g);
  std::map<int, std::vector<std::pair<const Graph*, std::string>>> codes;  // by n * 64 + m
  for (const Graph& g : graphs) {
    auto f = build_incremental(g);
    codes[g.vertex_count() * 64 + g.edge_count()].push_back({&g, canonical_code(*f, f->components().front())});
  }
  std::vector<Graph> keys;  // one representative per (n, m) bucket, processed as a unit
  std::vector<int> bucket_ids;
  for (const auto& [k, list] : codes) {
    keys.push_back(*list.front().first);
    bucket_ids.push_back(k);
  }
  std::map<const Graph*, int> bucket_of;
  for (std::size_t i = 0; i < keys.size(); ++i) bucket_of[&keys[i]] = bucket_ids[i];
  return run_over("isomorphism", keys, opt.threads, [&](const Graph& rep, Tally& t) {
    const auto& list = codes.at(bucket_of.at(&rep));
    std::mt19937 rng(opt.seed + static_cast<std::uint32_t>(list.size()));
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Graph& a = *list[i].first;
      // A randomly renamed and renumbered copy must get the same code.
      std::vector<Vertex> perm = a.vertices();
      std::shuffle(perm.begin(), perm.end(), rng);
      Graph b;
      for (Vertex v : perm) b.add_vertex("r" + a.name(v));
      for (auto [u, v] : a.edges()) b.add_edge(b.id("r" + a.name(u)), b.id("r" + a.name(v)));
      auto fb = build_incremental(b);
      t.compare(canonical_code(*fb, fb->components().front()) == list[i].second, isomorphic_bruteforce(a, b),
                [&] { return "relabelled copy of " + graph_summary(a); });
      for (std::size_t j = i + 1; j < list.size(); ++j)
        t.compare(list[i].second == list[j].second, isomorphic_bruteforce(a, *list[j].first),
                  [&] { return graph_summary(a) + " against " + graph_summary(*list[j].first); });
    }
  });
}

SweepCheck check_modular_bridge(const SweepOptions& opt) {
  const auto graphs = graphs_up_to(opt.n_max, 1, opt.samples, opt.seed + 4);
  return run_over("modular bridge", graphs, opt.threads, [&](const Graph& g, Tally& t) {
    const ModularGLT via_md = md_to_modular_glt(md_tree_bruteforce(g));
    const glt::GraphLabelledTree st = glt::split_tree_bruteforce(g);
    const ModularGLT via_st = splittree_to_modular_glt(st);
    t.expect(via_md.named_form() == via_st.named_form(), [&] { return "diagram fails on " + graph_summary(g); });
    t.expect(satisfies_gallai(via_md), [&] { return "Gallai conditions fail on " + graph_summary(g); });
    t.expect(modular_glt_to_splittree(via_md).named_form() == st.named_form(),
             [&] { return "split tree not recovered on " + graph_summary(g); });
    const bool fixed = st.is_clique_star() && via_st.tree.named_form() == st.named_form();
    const bool cograph = is_p4_free_oracle(g);
    t.compare(fixed, cograph, [&] { return "fixed point on " + graph_summary(g); });
    if (!cograph || g.vertex_count() < 2) return;
    auto f = build_incremental(g);
    const ComponentId c = f->components().front();
    const auto root = is_cograph_tree(*f, c);
    if (!root) return t.expect(false, [&] { return "no tree-root for cograph " + graph_summary(g); });
    const glt::GraphLabelledTree tree = f->to_glt(c);
    const std::vector<TreeNodeId> order = f->component_nodes(c);
    auto glt_id = [&](TreeNodeId u) {
      return static_cast<glt::NodeId>(std::find(order.begin(), order.end(), u) - order.begin());
    };
    const ModularGLT expected{tree, glt_id(root->a), root->is_edge() ? glt_id(root->b) : -1};
    t.expect(splittree_to_modular_glt(tree).named_form() == expected.named_form(),
             [&] { return "tree-root differs from the modular root on " + graph_summary(g); });
  });
}

SweepResult oracle_sweep(const SweepOptions& opt) {
  SweepResult r;
  r.checks.push_back(check_vertex_insertions(opt));
  r.checks.push_back(check_edge_modifications(opt));
  r.checks.push_back(check_word_table(opt));
  r.checks.push_back(check_split_uniqueness(opt));
  r.checks.push_back(check_split_enumeration(opt));
  r.checks.push_back(check_intersection_model(opt));
  r.checks.push_back(check_isomorphism(opt));
  r.checks.push_back(check_modular_bridge(opt));
  return r;
}

void write_sweep(std::ostream& out, const SweepResult& r) {
  for (const SweepCheck& c : r.checks) {
    out << (c.ok() ? "pass " : "FAIL ") << c.name << ": " << c.cases << " case(s), " << c.divergences
        << " divergence(s)";
    if (!c.ok()) out << "; first: " << c.witness;
    out << '\n';
  }
}

}  // namespace splitdh
