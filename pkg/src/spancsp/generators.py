"""Seeded random builders for morphisms, spans, cospans, cells and rules.

Every builder takes a ``random.Random`` and is deterministic given its state.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterator

from .cells import TwoCell
from .cospans import Cospan, VerticalSpan
from .graph import (
    Graph,
    GraphMorphism,
    compose_morphisms,
    generate_random_graph,
    inverse,
    relabel,
)
from .limits import coproduct
from .rewrite import OpenGraphRule, open_graph


def random_graph(rng: random.Random, max_nodes: int, max_edges: int) -> Graph:
    return generate_random_graph(rng, max_nodes, max_edges)


def random_iso(rng: random.Random, g: Graph, spread: int = 3) -> GraphMorphism:
    """An isomorphism from ``g`` onto a copy with shuffled, sparser identifiers."""
    nodes = rng.sample(range(len(g.nodes) * spread + 1), len(g.nodes))
    edges = rng.sample(range(len(g.edges) * spread + 1), len(g.edges))
    return relabel(g, dict(zip(sorted(g.nodes), nodes)), dict(zip(sorted(g.edges), edges)))


def random_morphism_from(rng: random.Random, g: Graph, extra_nodes: int = 1, extra_edges: int = 1) -> GraphMorphism:
    """An arbitrary morphism out of ``g`` into a freshly built codomain.

    Nodes may be merged, parallel edge images may be shared, and the
    codomain may gain up to ``extra_nodes`` / ``extra_edges`` unreached items.
    """
    n_src = len(g.nodes)
    n_tgt = rng.randint(1, n_src) if n_src else 0
    n_tgt += rng.randint(0, extra_nodes)
    node_map = {n: rng.randrange(n_tgt) for n in sorted(g.nodes)}
    cod_edges: dict[int, tuple[int, int]] = {}
    edge_map: dict[int, int] = {}
    for e, s, t in g.edge_items():
        ends = (node_map[s], node_map[t])
        reuse = [d for d, de in cod_edges.items() if de == ends]
        if reuse and rng.random() < 0.5:
            edge_map[e] = rng.choice(reuse)
        else:
            edge_map[e] = len(cod_edges)
            cod_edges[len(cod_edges)] = ends
    if n_tgt:
        for _ in range(rng.randint(0, extra_edges)):
            cod_edges[len(cod_edges)] = (rng.randrange(n_tgt), rng.randrange(n_tgt))
    cod = Graph(range(n_tgt), cod_edges)
    f = GraphMorphism(g, cod, node_map, edge_map)
    return compose_morphisms(f, random_iso(rng, cod))


def random_morphism_into(rng: random.Random, h: Graph, max_nodes: int, max_edges: int) -> GraphMorphism:
    """An arbitrary morphism from a freshly built graph into ``h``."""
    if not h.nodes:
        return GraphMorphism(Graph(), h, {}, {})
    targets = sorted(h.nodes)
    node_map = {n: rng.choice(targets) for n in range(rng.randint(0, max_nodes))}
    fibre: dict[int, list[int]] = {}
    for n, m in node_map.items():
        fibre.setdefault(m, []).append(n)
    h_edges = sorted(h.edges)
    edges: dict[int, tuple[int, int]] = {}
    edge_map: dict[int, int] = {}
    if h_edges:
        for _ in range(rng.randint(0, max_edges)):
            d = rng.choice(h_edges)
            s, t = h.ends(d)
            if s in fibre and t in fibre:
                e = len(edges)
                edges[e] = (rng.choice(fibre[s]), rng.choice(fibre[t]))
                edge_map[e] = d
    dom = Graph(node_map, edges)
    f = GraphMorphism(dom, h, node_map, edge_map)
    return compose_morphisms(inverse(random_iso(rng, dom)), f)


def random_subgraph(rng: random.Random, g: Graph, keep_nodes=(), keep_edges=(), p: float = 0.6) -> Graph:
    """A random subgraph of ``g`` containing the given nodes and edges (and their ends)."""
    nodes = set(keep_nodes)
    for e in keep_edges:
        nodes.update(g.ends(e))
    nodes |= {n for n in sorted(g.nodes) if rng.random() < p}
    edges = set(keep_edges)
    edges |= {e for e, s, t in g.edge_items() if s in nodes and t in nodes and rng.random() < p}
    return g.subgraph(nodes, edges)


def random_mono_into(rng: random.Random, h: Graph, keep_nodes=(), keep_edges=()) -> GraphMorphism:
    """A monomorphism onto a random subgraph of ``h``, from a relabeled copy."""
    sub = random_subgraph(rng, h, keep_nodes, keep_edges)
    iso = random_iso(rng, sub)
    return GraphMorphism(iso.cod, h, {iso.node_map[n]: n for n in sub.nodes}, {iso.edge_map[e]: e for e in sub.edges})


def random_mono_from(rng: random.Random, g: Graph, extra_nodes: int = 2, extra_edges: int = 2) -> GraphMorphism:
    """A monomorphism from ``g`` into ``g`` plus a few new nodes and edges, relabeled."""
    base = max(g.nodes, default=-1) + 1
    new_nodes = list(range(base, base + rng.randint(0, extra_nodes)))
    all_nodes = sorted(g.nodes) + new_nodes
    edges = {e: g.ends(e) for e in g.edges}
    e_base = max(g.edges, default=-1) + 1
    if all_nodes:
        for i in range(rng.randint(0, extra_edges)):
            edges[e_base + i] = (rng.choice(all_nodes), rng.choice(all_nodes))
    big = Graph(all_nodes, edges)
    inc = GraphMorphism(g, big, {n: n for n in g.nodes}, {e: e for e in g.edges})
    return compose_morphisms(inc, random_iso(rng, big))


def random_cospan(rng: random.Random, x: Graph, y: Graph, extra_nodes: int = 1, extra_edges: int = 2) -> Cospan:
    """A cospan ``x -> A <- y`` whose apex is a random quotient-and-extension of ``x + y``."""
    co = coproduct(x, y)
    f = random_morphism_from(rng, co.object, extra_nodes, extra_edges)
    return Cospan(compose_morphisms(co.left_inclusion, f), compose_morphisms(co.right_inclusion, f))


def random_iso_span(rng: random.Random, top: Graph) -> VerticalSpan:
    """An invertible span out of ``top`` with relabeled middle and bottom."""
    to_mid = random_iso(rng, top)
    to_bottom = random_iso(rng, top)
    return VerticalSpan(inverse(to_mid), compose_morphisms(inverse(to_mid), to_bottom))


def random_cell_below(rng: random.Random, top: Cospan, left: VerticalSpan, right: VerticalSpan) -> TwoCell:
    """A random cell with the given top row and side spans.

    The middle apex is a random subgraph of the top apex containing the
    images of the feet; the bottom apex extends it by fresh items.
    """
    if left.top != top.left_foot or right.top != top.right_foot:
        raise ValueError("side spans must start at the feet of the top row")
    feet_legs = (compose_morphisms(left.up_leg, top.left_leg), compose_morphisms(right.up_leg, top.right_leg))
    keep_n = [n for f in feet_legs for n in f.node_map.values()]
    keep_e = [e for f in feet_legs for e in f.edge_map.values()]
    up = random_mono_into(rng, top.apex, keep_n, keep_e)
    back_n = {m: k for k, m in up.node_map.items()}
    back_e = {m: k for k, m in up.edge_map.items()}
    mid_legs = [
        GraphMorphism(
            f.dom, up.dom,
            {a: back_n[b] for a, b in f.node_map.items()},
            {a: back_e[b] for a, b in f.edge_map.items()},
        )
        for f in feet_legs
    ]
    mid = Cospan(*mid_legs)
    down = random_mono_from(rng, up.dom)
    bottom = Cospan(
        compose_morphisms(inverse(left.down_leg), compose_morphisms(mid.left_leg, down)),
        compose_morphisms(inverse(right.down_leg), compose_morphisms(mid.right_leg, down)),
    )
    return TwoCell(top, mid, bottom, up, down, left, right)


def edgeless(rng: random.Random, max_nodes: int) -> Graph:
    return Graph.discrete(rng.sample(range(3 * max_nodes + 1), rng.randint(0, max_nodes)))


def random_rule(rng: random.Random, max_nodes: int, max_edges: int) -> OpenGraphRule:
    """A rule ``L <- K -> R`` with ``K`` a subgraph of ``L`` and ``R`` an extension of ``K``."""
    lhs = random_graph(rng, max_nodes, max_edges)
    nodes = sorted(lhs.nodes)
    inputs = [n for n in nodes if rng.random() < 0.3]
    outputs = [n for n in nodes if rng.random() < 0.3]
    k = random_mono_into(rng, lhs, inputs + outputs)
    iface = k.dom
    back = {m: a for a, m in k.node_map.items()}
    ins, outs = [back[n] for n in inputs], [back[n] for n in outputs]
    down = random_mono_from(rng, iface)
    top = Cospan(inclusion_of(Graph.discrete(ins), back, lhs), inclusion_of(Graph.discrete(outs), back, lhs))
    mid = open_graph(iface, ins, outs)
    bottom = Cospan(compose_morphisms(mid.left_leg, down), compose_morphisms(mid.right_leg, down))
    return OpenGraphRule.from_rows(top, mid, bottom, k, down)


def inclusion_of(foot: Graph, back: dict[int, int], g: Graph) -> GraphMorphism:
    """Map a foot named by interface ids into ``g`` through the inverse of ``back``."""
    fwd = {a: m for m, a in back.items()}
    return GraphMorphism(foot, g, {n: fwd[n] for n in foot.nodes}, {})


def random_host(rng: random.Random, rule: OpenGraphRule, extra_nodes: int = 2, extra_edges: int = 2) -> Cospan:
    """An open graph containing the rule's pattern, with random boundary on surviving nodes."""
    emb = random_mono_from(rng, rule.cell.top.apex, extra_nodes, extra_edges)
    g = emb.cod
    kept = {emb.node_map[rule.cell.up.node_map[n]] for n in rule.cell.mid.apex.nodes}
    fresh = set(g.nodes) - set(emb.node_map.values())
    allowed = sorted(kept | fresh)
    inputs = [n for n in allowed if rng.random() < 0.3]
    outputs = [n for n in allowed if rng.random() < 0.3]
    return open_graph(g, inputs, outputs)


def small_graphs(max_nodes: int, max_edges: int) -> Iterator[Graph]:
    """Every graph on nodes ``0..n-1`` (``n <= max_nodes``) with at most ``max_edges`` edges.

    Edge lists are multisets of ordered pairs, so isomorphic graphs repeat.
    """
    for n in range(max_nodes + 1):
        pairs = [(s, t) for s in range(n) for t in range(n)]
        for k in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(pairs, k):
                yield Graph.from_edges(range(n), combo)
