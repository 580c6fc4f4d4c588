import pytest

import splitdh


def path(n):
    return splitdh.Graph([(f"v{i}", f"v{i + 1}") for i in range(n - 1)])


def cycle(n):
    return splitdh.Graph([(f"v{i}", f"v{(i + 1) % n}") for i in range(n)])


def test_graph_round_trip():
    g = path(4)
    assert g.vertex_count == 4
    assert g.edge_count == 3
    assert g.has_edge("v1", "v2")
    h = splitdh.read_graph(splitdh.write_graph(g))
    assert sorted(h.vertices) == sorted(g.vertices)
    assert h.edge_count == 3


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_class_verdicts_agree_with_oracle(n):
    for g in (path(n), cycle(n)):
        for cls in ("dh", "cograph", "3lp"):
            assert splitdh.in_class(g, cls) == splitdh.oracle(g, cls)


def test_cycles_of_five_or_more_are_rejected():
    assert splitdh.in_class(cycle(4))
    assert not splitdh.in_class(cycle(5))
    with pytest.raises(ValueError):
        splitdh.SplitTree(cycle(5))


def test_split_tree_insertions_keep_the_graph():
    t = splitdh.SplitTree(path(4))
    assert t.check_invariants() == ""
    ok, _ = t.insert_vertex("x", ["v0", "v3"])
    assert not ok  # closes a C5
    assert t.vertex_count == 4
    ok, _ = t.insert_vertex("x", ["v1", "v2"])
    assert ok
    g = t.graph()
    assert g.has_edge("x", "v1") and g.has_edge("x", "v2")
    assert t.check_invariants() == ""


def test_edge_modification_reports_the_path_word():
    t = splitdh.SplitTree(path(5))
    r = t.insert_edge("v0", "v4")
    assert not r["accept"]
    assert r["word"] == t.path_word("v0", "v4")
    r = t.insert_edge("v0", "v2")
    assert r["accept"]
    assert t.graph().has_edge("v0", "v2")


def test_isomorphism_ignores_labels():
    a = path(5)
    b = splitdh.Graph([("p", "q"), ("q", "r"), ("r", "s"), ("s", "t")])
    assert splitdh.isomorphic(a, b)
    star = splitdh.Graph([("c", x) for x in "abcd" if x != "c"] + [("c", "e")])
    assert not splitdh.isomorphic(a, star)
    codes = splitdh.SplitTree(a).canonical_codes()
    assert codes == splitdh.SplitTree(b).canonical_codes()


def test_word_table():
    words = splitdh.forbidden_subwords("insert", 4)
    assert words
    assert all(not splitdh.word_safe(w, "insert") for w in words)


def test_session_reports_per_step_verdicts():
    s = splitdh.Session(classes=["dh", "cograph"], oracle=True)
    steps = s.apply("addv a :\naddv b : a\naddv c : b\naddv d : c\nexpect cograph no\n")
    assert len(steps) == 5
    assert all(not st["failures"] for st in steps)
    assert s.graph.vertex_count == 4
    assert s.in_class("dh")
    with pytest.raises(splitdh.ScriptError):
        s.apply("bogus line")


def test_modular_bridge_round_trip():
    g = splitdh.Graph([("a", "b"), ("b", "c"), ("c", "d"), ("a", "e"), ("b", "e")])
    assert splitdh.modular_decomposition(g)
    assert splitdh.modular_tree(g) == splitdh.modular_tree_from_split_tree(g)


def test_small_sweep_is_clean():
    for name, (cases, divergences, witness) in splitdh.sweep(4).items():
        assert divergences == 0, (name, witness)
