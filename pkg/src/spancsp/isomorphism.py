"""Backtracking search for isomorphisms that commute with given arrows."""
from __future__ import annotations

from collections import Counter, defaultdict
from typing import Sequence

from .errors import BudgetExceeded, CompositionError
from .graph import Graph, GraphMorphism

DEFAULT_SEARCH_BUDGET = 10**6

Pair = tuple[GraphMorphism, GraphMorphism]


def find_commuting_isomorphism(
    g: Graph,
    h: Graph,
    incoming: Sequence[Pair] = (),
    outgoing: Sequence[Pair] = (),
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> GraphMorphism | None:
    """Find an isomorphism ``theta: g -> h`` compatible with the constraints.

    ``incoming`` holds pairs ``(u: X -> g, v: X -> h)`` demanding
    ``theta . u == v``; ``outgoing`` holds pairs ``(w: g -> Y, w2: h -> Y)``
    demanding ``w2 . theta == w``. Returns ``None`` when no such isomorphism
    exists. The search is exhaustive, so ``None`` is a proof. Raises
    ``BudgetExceeded`` after ``budget`` search steps.
    """
    for u, v in incoming:
        if u.cod != g or v.cod != h or u.dom != v.dom:
            raise CompositionError("incoming constraint pair does not land in (g, h) from a shared domain")
    for w, w2 in outgoing:
        if w.dom != g or w2.dom != h or w.cod != w2.cod:
            raise CompositionError("outgoing constraint pair does not leave (g, h) into a shared codomain")

    if len(g.nodes) != len(h.nodes) or len(g.edges) != len(h.edges):
        return None

    forced_nodes: dict[int, int] = {}
    forced_edges: dict[int, int] = {}
    for u, v in incoming:
        for x, gx in u.node_map.items():
            hx = v.node_map[x]
            if forced_nodes.setdefault(gx, hx) != hx:
                return None
        for x, gx in u.edge_map.items():
            hx = v.edge_map[x]
            if forced_edges.setdefault(gx, hx) != hx:
                return None
    if len(set(forced_nodes.values())) != len(forced_nodes):
        return None
    if len(set(forced_edges.values())) != len(forced_edges):
        return None

    def node_signature(graph: Graph, n: int, side: int) -> tuple:
        images = tuple(pair[side].node_map[n] for pair in outgoing)
        return graph.degree_profile(n), images

    def edge_signature(graph: Graph, e: int, side: int) -> tuple:
        return tuple(pair[side].edge_map[e] for pair in outgoing)

    h_by_sig: dict[tuple, list[int]] = defaultdict(list)
    for n in sorted(h.nodes):
        h_by_sig[node_signature(h, n, 1)].append(n)
    g_sig = {n: node_signature(g, n, 0) for n in g.nodes}
    if Counter(g_sig.values()) != Counter({k: len(v) for k, v in h_by_sig.items()}):
        return None

    candidates: dict[int, list[int]] = {}
    for n in g.nodes:
        if n in forced_nodes:
            m = forced_nodes[n]
            if m not in h.nodes or node_signature(h, m, 1) != g_sig[n]:
                return None
            candidates[n] = [m]
        else:
            candidates[n] = [m for m in h_by_sig[g_sig[n]] if m not in forced_nodes.values()]

    g_between = g.edges_between()
    h_between = h.edges_between()
    # order: most constrained first, then prefer neighbours of already placed nodes
    order: list[int] = []
    remaining = set(g.nodes)
    adjacency: dict[int, set[int]] = defaultdict(set)
    for s, t in g_between:
        adjacency[s].add(t)
        adjacency[t].add(s)
    while remaining:
        placed = set(order)
        n = min(
            remaining,
            key=lambda x: (len(candidates[x]), -len(adjacency[x] & placed), x),
        )
        order.append(n)
        remaining.remove(n)

    steps = 0
    node_map: dict[int, int] = {}
    used: set[int] = set()

    def tick() -> None:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"isomorphism search exceeded {budget} steps")

    def consistent(n: int, m: int) -> bool:
        for other, image in node_map.items():
            if len(g_between.get((n, other), ())) != len(h_between.get((m, image), ())):
                return False
            if len(g_between.get((other, n), ())) != len(h_between.get((image, m), ())):
                return False
        return len(g_between.get((n, n), ())) == len(h_between.get((m, m), ()))

    def match_edges() -> dict[int, int] | None:
        edge_map: dict[int, int] = {}
        for (s, t), g_es in g_between.items():
            h_es = h_between.get((node_map[s], node_map[t]), [])
            sub = _match_parallel(g_es, h_es, forced_edges, g, h, outgoing, tick)
            if sub is None:
                return None
            edge_map.update(sub)
        return edge_map

    def search(i: int) -> GraphMorphism | None:
        if i == len(order):
            edge_map = match_edges()
            if edge_map is None:
                return None
            return GraphMorphism(g, h, dict(node_map), edge_map, check=False)
        n = order[i]
        for m in candidates[n]:
            if m in used:
                continue
            tick()
            if not consistent(n, m):
                continue
            node_map[n] = m
            used.add(m)
            found = search(i + 1)
            if found is not None:
                return found
            used.discard(m)
            del node_map[n]
        return None

    return search(0)


def _match_parallel(g_es, h_es, forced_edges, g, h, outgoing, tick) -> dict[int, int] | None:
    """Biject a class of parallel edges of ``g`` onto one of ``h``."""
    if len(g_es) != len(h_es):
        return None
    allowed = {}
    h_set = set(h_es)
    for e in g_es:
        if e in forced_edges:
            opts = [forced_edges[e]] if forced_edges[e] in h_set else []
        else:
            sig = tuple(w.edge_map[e] for w, _ in outgoing)
            opts = [d for d in h_es if tuple(w2.edge_map[d] for _, w2 in outgoing) == sig]
        if not opts:
            return None
        allowed[e] = opts
    out: dict[int, int] = {}
    taken: set[int] = set()
    ordered = sorted(g_es, key=lambda e: len(allowed[e]))

    def go(i: int) -> bool:
        if i == len(ordered):
            return True
        e = ordered[i]
        for d in allowed[e]:
            if d in taken:
                continue
            tick()
            out[e] = d
            taken.add(d)
            if go(i + 1):
                return True
            taken.discard(d)
            del out[e]
        return False

    return out if go(0) else None


def are_isomorphic(g: Graph, h: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    return find_commuting_isomorphism(g, h, budget=budget) is not None
