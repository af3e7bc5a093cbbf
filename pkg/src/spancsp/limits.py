"""Finite limits and colimits of graphs, and a brute-force oracle for them.

All constructions are deterministic: equal inputs give equal (not merely
isomorphic) outputs.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .errors import BudgetExceeded, CompositionError, InvariantError
from .graph import (
    EMPTY,
    Graph,
    GraphMorphism,
    compose_morphisms,
    identity,
    initial_morphism,
    iter_morphisms,
)

DEFAULT_VERIFY_CAP = 10**6

# Names of deliberately broken code paths, switched on only by the mutation
# harness in lawcheck.
_MUTATIONS: set[str] = set()


@contextlib.contextmanager
def mutation(name: str) -> Iterator[None]:
    """Temporarily break one construction step ("pushout_quotient" or "pullback_pairing")."""
    if name not in {"pushout_quotient", "pullback_pairing"}:
        raise ValueError(f"unknown mutation {name!r}")
    _MUTATIONS.add(name)
    try:
        yield
    finally:
        _MUTATIONS.discard(name)


@dataclass(frozen=True)
class CoconeResult:
    object: Graph
    left_inclusion: GraphMorphism
    right_inclusion: GraphMorphism


@dataclass(frozen=True)
class ConeResult:
    object: Graph
    left_projection: GraphMorphism
    right_projection: GraphMorphism


class UnionFind:
    """Disjoint sets whose representative is always the minimum member."""

    def __init__(self, items=()):
        self.parent: dict = {x: x for x in items}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx


def _offset(ids) -> int:
    return max(ids) + 1 if ids else 0


def coproduct(g: Graph, h: Graph) -> CoconeResult:
    """Disjoint union; ``g`` keeps its ids, ``h``'s are shifted past ``max(g)``."""
    dn, de = _offset(g.nodes), _offset(g.edges)
    edges = dict((e, g.ends(e)) for e in g.edges)
    for e, s, t in h.edge_items():
        edges[e + de] = (s + dn, t + dn)
    obj = Graph(set(g.nodes) | {n + dn for n in h.nodes}, edges)
    inl = GraphMorphism(g, obj, {n: n for n in g.nodes}, {e: e for e in g.edges}, check=False)
    inr = GraphMorphism(h, obj, {n: n + dn for n in h.nodes}, {e: e + de for e in h.edges}, check=False)
    return CoconeResult(obj, inl, inr)


def coproduct_object(*graphs: Graph) -> Graph:
    """Left-nested coproduct ``((g1 + g2) + g3) + ...``; the empty graph for no input."""
    out = EMPTY
    for i, g in enumerate(graphs):
        out = g if i == 0 else coproduct(out, g).object
    return out


def coproduct_morphisms(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """``f + g : dom f + dom g -> cod f + cod g``."""
    src = coproduct(f.dom, g.dom)
    tgt = coproduct(f.cod, g.cod)
    nm, em = {}, {}
    for inc_src, inc_tgt, h in ((src.left_inclusion, tgt.left_inclusion, f), (src.right_inclusion, tgt.right_inclusion, g)):
        for n, m in h.node_map.items():
            nm[inc_src.node_map[n]] = inc_tgt.node_map[m]
        for e, d in h.edge_map.items():
            em[inc_src.edge_map[e]] = inc_tgt.edge_map[d]
    return GraphMorphism(src.object, tgt.object, nm, em, check=False)


def copair(cocone: CoconeResult, h1: GraphMorphism, h2: GraphMorphism) -> GraphMorphism:
    """The mediating map out of a colimit whose inclusions are jointly surjective.

    Raises ``InvariantError`` if ``(h1, h2)`` does not factor through the cocone.
    """
    obj = cocone.object
    if h1.dom != cocone.left_inclusion.dom or h2.dom != cocone.right_inclusion.dom or h1.cod != h2.cod:
        raise CompositionError("competing cocone does not match the colimit's legs")
    nm: dict[int, int] = {}
    em: dict[int, int] = {}
    for inc, h in ((cocone.left_inclusion, h1), (cocone.right_inclusion, h2)):
        for n, p in inc.node_map.items():
            if nm.setdefault(p, h.node_map[n]) != h.node_map[n]:
                raise InvariantError(f"competing cocone disagrees on colimit node {p}")
        for e, p in inc.edge_map.items():
            if em.setdefault(p, h.edge_map[e]) != h.edge_map[e]:
                raise InvariantError(f"competing cocone disagrees on colimit edge {p}")
    if set(nm) != obj.nodes or set(em) != obj.edges:
        raise InvariantError("colimit inclusions are not jointly surjective")
    return GraphMorphism(obj, h1.cod, nm, em)


def pushout(f: GraphMorphism, g: GraphMorphism) -> CoconeResult:
    """Pushout of ``cod f <- A -> cod g``.

    Built as the coproduct of the codomains quotiented by the equivalence
    generated by ``f(a) ~ g(a)``; every class is named by its minimum id.
    """
    if f.dom != g.dom:
        raise CompositionError("pushout legs have different domains")
    co = coproduct(f.cod, g.cod)
    obj = co.object
    inl, inr = co.left_inclusion, co.right_inclusion
    if "pushout_quotient" in _MUTATIONS:
        return CoconeResult(obj, inl, inr)

    nodes = UnionFind(obj.nodes)
    edges = UnionFind(obj.edges)
    for a in f.dom.nodes:
        nodes.union(inl.node_map[f.node_map[a]], inr.node_map[g.node_map[a]])
    for a in f.dom.edges:
        edges.union(inl.edge_map[f.edge_map[a]], inr.edge_map[g.edge_map[a]])

    quotient_edges: dict[int, tuple[int, int]] = {}
    for e, s, t in obj.edge_items():
        rep = edges.find(e)
        ends = (nodes.find(s), nodes.find(t))
        if quotient_edges.setdefault(rep, ends) != ends:
            raise InvariantError(f"pushout quotient is ill defined on edge class {rep}")
    quotient = Graph({nodes.find(n) for n in obj.nodes}, quotient_edges)

    def through(inc: GraphMorphism) -> GraphMorphism:
        return GraphMorphism(
            inc.dom,
            quotient,
            {n: nodes.find(p) for n, p in inc.node_map.items()},
            {e: edges.find(p) for e, p in inc.edge_map.items()},
            check=False,
        )

    return CoconeResult(quotient, through(inl), through(inr))


def pullback(f: GraphMorphism, g: GraphMorphism) -> ConeResult:
    """Pullback of ``dom f -> D <- dom g``.

    Elements are the pairs ``(x, y)`` with ``f(x) == g(y)``, numbered in
    lexicographic order of the pairs.
    """
    if f.cod != g.cod:
        raise CompositionError("pullback legs have different codomains")
    b, c = f.dom, g.dom
    if "pullback_pairing" in _MUTATIONS:
        node_pairs = sorted((x, y) for x in b.nodes for y in c.nodes)
        edge_pairs = sorted(
            (x, y) for x in b.edges for y in c.edges
            if f.edge_map[x] == g.edge_map[y]
        )
    else:
        node_pairs = sorted((x, y) for x in b.nodes for y in c.nodes if f.node_map[x] == g.node_map[y])
        edge_pairs = sorted((x, y) for x in b.edges for y in c.edges if f.edge_map[x] == g.edge_map[y])
    node_id = {p: i for i, p in enumerate(node_pairs)}
    obj = Graph(
        range(len(node_pairs)),
        {
            i: (node_id[b.src[x], c.src[y]], node_id[b.tgt[x], c.tgt[y]])
            for i, (x, y) in enumerate(edge_pairs)
        },
    )
    left = GraphMorphism(obj, b, {i: x for (x, _), i in node_id.items()}, {i: x for i, (x, _) in enumerate(edge_pairs)}, check=False)
    right = GraphMorphism(obj, c, {i: y for (_, y), i in node_id.items()}, {i: y for i, (_, y) in enumerate(edge_pairs)}, check=False)
    return ConeResult(obj, left, right)


def pair(cone: ConeResult, h1: GraphMorphism, h2: GraphMorphism) -> GraphMorphism:
    """The mediating map into a pullback built by ``pullback``."""
    p1, p2 = cone.left_projection, cone.right_projection
    if h1.dom != h2.dom or h1.cod != p1.cod or h2.cod != p2.cod:
        raise CompositionError("competing cone does not match the pullback's legs")
    node_of = {(p1.node_map[i], p2.node_map[i]): i for i in cone.object.nodes}
    edge_of = {(p1.edge_map[i], p2.edge_map[i]): i for i in cone.object.edges}
    try:
        nm = {n: node_of[h1.node_map[n], h2.node_map[n]] for n in h1.dom.nodes}
        em = {e: edge_of[h1.edge_map[e], h2.edge_map[e]] for e in h1.dom.edges}
    except KeyError as exc:
        raise InvariantError(f"competing cone does not commute at {exc.args[0]}") from None
    return GraphMorphism(h1.dom, cone.object, nm, em)


def codiagonal(x: Graph) -> GraphMorphism:
    """The fold ``X + X -> X``."""
    co = coproduct(x, x)
    return copair(co, identity(x), identity(x))


def initial_object() -> Graph:
    return EMPTY


def from_initial(x: Graph) -> GraphMorphism:
    return initial_morphism(x)


def associator_iso(a: Graph, b: Graph, c: Graph) -> GraphMorphism:
    """The canonical isomorphism ``(a + b) + c -> a + (b + c)``."""
    ab = coproduct(a, b)
    bc = coproduct(b, c)
    a_bc = coproduct(a, bc.object)
    ab_c = coproduct(ab.object, c)
    into = copair(
        ab,
        a_bc.left_inclusion,
        compose_morphisms(bc.left_inclusion, a_bc.right_inclusion),
    )
    return copair(ab_c, into, compose_morphisms(bc.right_inclusion, a_bc.right_inclusion))


def swap_iso(a: Graph, b: Graph) -> GraphMorphism:
    """The block swap ``a + b -> b + a``."""
    ab = coproduct(a, b)
    ba = coproduct(b, a)
    return copair(ab, ba.right_inclusion, ba.left_inclusion)


# -- universal property oracle -------------------------------------------------


def subobject_classifier() -> Graph:
    """The subobject classifier of Graph.

    Node 0 is "false" and node 1 is "true". The five edges are the subgraphs
    of a single edge, each running from "is the source in" to "is the target in":
    nothing (0->0), source only (1->0), target only (0->1), both endpoints
    without the edge (1->1, id 3) and everything (1->1, id 4).
    """
    return Graph((0, 1), {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1), 4: (1, 1)})


def representables() -> tuple[Graph, Graph]:
    """The free node and the free edge, which jointly detect limits."""
    return Graph((0,)), Graph((0, 1), {0: (0, 1)})


Square = Sequence[GraphMorphism]


def _check_square(kind: str, square: Square) -> bool:
    f, g, p, q = square
    if kind == "pushout":
        if f.dom != g.dom or p.dom != f.cod or q.dom != g.cod or p.cod != q.cod:
            raise CompositionError("square arrows are not arranged as a pushout square")
        return compose_morphisms(f, p) == compose_morphisms(g, q)
    if f.cod != g.cod or p.cod != f.dom or q.cod != g.dom or p.dom != q.dom:
        raise CompositionError("square arrows are not arranged as a pullback square")
    return compose_morphisms(p, f) == compose_morphisms(q, g)


def verify_universal_property(
    kind: Literal["pushout", "pullback"],
    square: Square,
    cap: int = DEFAULT_VERIFY_CAP,
    probes: Sequence[Graph] | None = None,
) -> bool:
    """Check a square against its universal property by exhaustive search.

    For a pushout, ``square = (f: A->B, g: A->C, p: B->P, q: C->P)``; for a
    pullback, ``square = (f: B->D, g: C->D, p: P->B, q: P->C)``. For every
    probe object Y, every competing (co)cone through Y is enumerated and must
    admit exactly one mediating morphism. The default probes are the subobject
    classifier for pushouts (an injective cogenerator, so it detects colimits)
    and the two representables for pullbacks (they generate, so they detect
    limits). ``cap`` bounds the number of competing (co)cones examined.
    """
    if kind not in ("pushout", "pullback"):
        raise ValueError(f"unknown square kind {kind!r}")
    if not _check_square(kind, square):
        return False
    f, g, p, q = square
    examined = 0

    def count() -> None:
        nonlocal examined
        examined += 1
        if examined > cap:
            raise BudgetExceeded(f"more than {cap} competing cones to examine")

    if kind == "pushout":
        for y in probes if probes is not None else (subobject_classifier(),):
            for u in iter_morphisms(f.cod, y):
                fixed_n = {g.node_map[a]: u.node_map[f.node_map[a]] for a in f.dom.nodes}
                fixed_e = {g.edge_map[a]: u.edge_map[f.edge_map[a]] for a in f.dom.edges}
                # a conflicting constraint means g identifies what u.f separates: no v
                if any(u.node_map[f.node_map[a]] != fixed_n[g.node_map[a]] for a in f.dom.nodes):
                    continue
                if any(u.edge_map[f.edge_map[a]] != fixed_e[g.edge_map[a]] for a in f.dom.edges):
                    continue
                for v in iter_morphisms(g.cod, y, fixed_n, fixed_e):
                    count()
                    if _count_mediators_out(p, q, u, v, 2) != 1:
                        return False
        return True

    for y in probes if probes is not None else representables():
        for u in iter_morphisms(y, f.dom):
            fu = compose_morphisms(u, f)
            for v in iter_morphisms(y, g.dom):
                if compose_morphisms(v, g) != fu:
                    continue
                count()
                mediators = 0
                for m in iter_morphisms(y, p.dom):
                    if compose_morphisms(m, p) == u and compose_morphisms(m, q) == v:
                        mediators += 1
                        if mediators > 1:
                            break
                if mediators != 1:
                    return False
    return True


def _count_mediators_out(p, q, u, v, stop: int) -> int:
    """Number (capped at ``stop``) of ``m: P -> Y`` with ``m.p == u`` and ``m.q == v``."""
    fixed_n: dict[int, int] = {}
    fixed_e: dict[int, int] = {}
    for leg, h in ((p, u), (q, v)):
        for n, x in leg.node_map.items():
            if fixed_n.setdefault(x, h.node_map[n]) != h.node_map[n]:
                return 0
        for e, x in leg.edge_map.items():
            if fixed_e.setdefault(x, h.edge_map[e]) != h.edge_map[e]:
                return 0
    found = 0
    for _ in iter_morphisms(p.cod, u.cod, fixed_n, fixed_e):
        found += 1
        if found >= stop:
            break
    return found
