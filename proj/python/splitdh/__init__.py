"""Split trees of dynamic distance-hereditary graphs."""

from ._core import (
    Graph,
    ScriptError,
    Session,
    SplitTree,
    forbidden_subwords,
    in_class,
    isomorphic,
    modular_decomposition,
    modular_tree,
    modular_tree_from_split_tree,
    oracle,
    read_graph,
    sweep,
    word_safe,
    write_graph,
)

__all__ = [
    "Graph",
    "ScriptError",
    "Session",
    "SplitTree",
    "forbidden_subwords",
    "in_class",
    "isomorphic",
    "modular_decomposition",
    "modular_tree",
    "modular_tree_from_split_tree",
    "oracle",
    "read_graph",
    "sweep",
    "word_safe",
    "write_graph",
]
