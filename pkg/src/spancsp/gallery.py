"""Small named open graphs and rules used by the demos, tests and CLI."""
from __future__ import annotations

from .cospans import Cospan
from .graph import Graph
from .rewrite import OpenGraphRule, make_rule, open_graph

# node ids for the relay example
I, X, O, A, B, C, D = 0, 1, 2, 3, 4, 5, 6


def relay() -> Cospan:
    """``i -> x -> o`` with input ``i`` and output ``o``."""
    return open_graph(Graph.from_edges([I, X, O], [(I, X), (X, O)]), [I], [O])


def diamond() -> Cospan:
    """``i -> a``, ``a -> b``, ``a -> c``, ``b -> d``, ``c -> d``, ``d -> o``."""
    g = Graph.from_edges([I, O, A, B, C, D], [(I, A), (A, B), (A, C), (B, D), (C, D), (D, O)])
    return open_graph(g, [I], [O])


def relay_to_diamond_rule() -> OpenGraphRule:
    """Replace the middle node of a relay by a diamond, keeping both ends."""
    return make_rule(relay().apex, Graph.discrete([I, O]), diamond().apex, [I], [O])


def relay_in_context() -> Cospan:
    """A relay sandwiched between an extra input edge and an extra output edge."""
    p, q = 7, 8
    g = Graph.from_edges([p, I, X, O, q], [(p, I), (I, X), (X, O), (O, q)])
    return open_graph(g, [p], [q])


def two_paths() -> Cospan:
    """``a -> b -> e`` and ``c -> d -> e`` with input ``a`` and output ``e``."""
    a, b, c, d, e = range(5)
    return open_graph(Graph.from_edges(range(5), [(a, b), (b, e), (c, d), (d, e)]), [a], [e])


def collapse_two_paths_rule() -> OpenGraphRule:
    """Rewrite :func:`two_paths` to the single edge ``a -> e``."""
    a, e = 0, 4
    return make_rule(two_paths().apex, Graph.discrete([a, e]), Graph.from_edges([a, e], [(a, e)]), [a], [e])


def merge() -> Cospan:
    """``a -> c <- b`` with inputs ``a, b`` and output ``c``."""
    return open_graph(Graph.from_edges([0, 1, 2], [(0, 2), (1, 2)]), [0, 1], [2])


def extend() -> Cospan:
    """``c -> d`` with input ``c`` and output ``d``."""
    return open_graph(Graph.from_edges([2, 3], [(2, 3)]), [2], [3])
