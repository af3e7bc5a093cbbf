"""Finite directed multigraphs and their morphisms."""
from __future__ import annotations

import itertools
import random
from collections import defaultdict
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import BudgetExceeded, CompositionError, MalformedGraphError

DEFAULT_ENUMERATION_CAP = 10**6


class Graph:
    """A finite directed multigraph.

    Nodes and edges are nonnegative integers living in separate namespaces.
    Loops and parallel edges are allowed. Instances are immutable.
    """

    __slots__ = ("_nodes", "_src", "_tgt", "_hash")

    def __init__(self, nodes: Iterable[int] = (), edges: Mapping[int, tuple[int, int]] | None = None):
        node_set = frozenset(nodes)
        src: dict[int, int] = {}
        tgt: dict[int, int] = {}
        for n in node_set:
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise MalformedGraphError(f"node id {n!r} is not a nonnegative integer")
        for e, (s, t) in (edges or {}).items():
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise MalformedGraphError(f"edge id {e!r} is not a nonnegative integer")
            if s not in node_set or t not in node_set:
                raise MalformedGraphError(f"edge {e} has endpoint outside the node set ({s} -> {t})")
            src[e] = s
            tgt[e] = t
        self._nodes = node_set
        self._src = MappingProxyType(src)
        self._tgt = MappingProxyType(tgt)
        self._hash = None

    @classmethod
    def from_edges(cls, nodes: Iterable[int], edge_list: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph whose edges are numbered 0, 1, ... in the given order."""
        return cls(nodes, {i: (s, t) for i, (s, t) in enumerate(edge_list)})

    @classmethod
    def discrete(cls, nodes: Iterable[int]) -> Graph:
        return cls(nodes)

    @property
    def nodes(self) -> frozenset[int]:
        return self._nodes

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(self._src)

    @property
    def src(self) -> Mapping[int, int]:
        return self._src

    @property
    def tgt(self) -> Mapping[int, int]:
        return self._tgt

    def ends(self, e: int) -> tuple[int, int]:
        return self._src[e], self._tgt[e]

    def edge_items(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(edge, src, tgt)`` in increasing edge order."""
        for e in sorted(self._src):
            yield e, self._src[e], self._tgt[e]

    def edges_between(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = defaultdict(list)
        for e, s, t in self.edge_items():
            out[s, t].append(e)
        return dict(out)

    @property
    def is_empty(self) -> bool:
        return not self._nodes

    @property
    def is_edgeless(self) -> bool:
        return not self._src

    def degree_profile(self, n: int) -> tuple[int, int, int]:
        out_deg = in_deg = loops = 0
        for e in self._src:
            s, t = self._src[e], self._tgt[e]
            if s == t == n:
                loops += 1
            elif s == n:
                out_deg += 1
            elif t == n:
                in_deg += 1
        return out_deg, in_deg, loops

    def subgraph(self, nodes: Iterable[int], edges: Iterable[int]) -> Graph:
        return Graph(nodes, {e: self.ends(e) for e in edges})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nodes == other._nodes and self._src == other._src and self._tgt == other._tgt

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nodes, frozenset(self._src.items()), frozenset(self._tgt.items())))
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(f"{e}:{s}->{t}" for e, s, t in self.edge_items())
        return f"Graph(nodes={sorted(self._nodes)}, edges={{{edges}}})"


EMPTY = Graph()


class GraphMorphism:
    """A structure-preserving map ``dom -> cod``."""

    __slots__ = ("dom", "cod", "_node_map", "_edge_map", "_hash")

    def __init__(
        self,
        dom: Graph,
        cod: Graph,
        node_map: Mapping[int, int],
        edge_map: Mapping[int, int] | None = None,
        check: bool = True,
    ):
        self.dom = dom
        self.cod = cod
        self._node_map = MappingProxyType(dict(node_map))
        self._edge_map = MappingProxyType(dict(edge_map or {}))
        self._hash = None
        if check:
            self.validate()

    def validate(self) -> None:
        dom, cod, nm, em = self.dom, self.cod, self._node_map, self._edge_map
        if set(nm) != dom.nodes:
            raise MalformedGraphError("node map is not total on the domain")
        if set(em) != dom.edges:
            raise MalformedGraphError("edge map is not total on the domain")
        for n, m in nm.items():
            if m not in cod.nodes:
                raise MalformedGraphError(f"node {n} maps to {m}, which is not in the codomain")
        for e, f in em.items():
            if f not in cod.src:
                raise MalformedGraphError(f"edge {e} maps to {f}, which is not in the codomain")
            if nm[dom.src[e]] != cod.src[f] or nm[dom.tgt[e]] != cod.tgt[f]:
                raise MalformedGraphError(f"edge {e} -> {f} does not preserve source/target")

    @property
    def node_map(self) -> Mapping[int, int]:
        return self._node_map

    @property
    def edge_map(self) -> Mapping[int, int]:
        return self._edge_map

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Images listed in increasing order of domain identifiers."""
        return (
            tuple(self._node_map[n] for n in sorted(self._node_map)),
            tuple(self._edge_map[e] for e in sorted(self._edge_map)),
        )

    def then(self, other: GraphMorphism) -> GraphMorphism:
        return compose_morphisms(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self._node_map == other._node_map
            and self._edge_map == other._edge_map
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.key()))
        return self._hash

    def __repr__(self) -> str:
        nm = dict(sorted(self._node_map.items()))
        em = dict(sorted(self._edge_map.items()))
        return f"GraphMorphism(nodes={nm}, edges={em})"


class Classification(NamedTuple):
    mono: bool
    epi: bool
    iso: bool


def identity(g: Graph) -> GraphMorphism:
    return GraphMorphism(g, g, {n: n for n in g.nodes}, {e: e for e in g.edges}, check=False)


def initial_morphism(g: Graph) -> GraphMorphism:
    """The unique morphism from the empty graph."""
    return GraphMorphism(EMPTY, g, {}, {}, check=False)


def _first_difference(a: Graph, b: Graph) -> str:
    if a.nodes != b.nodes:
        diff = sorted(a.nodes ^ b.nodes)
        return f"node sets differ (first differing node id {diff[0]})"
    if a.edges != b.edges:
        diff = sorted(a.edges ^ b.edges)
        return f"edge sets differ (first differing edge id {diff[0]})"
    for e in sorted(a.edges):
        if a.ends(e) != b.ends(e):
            return f"edge {e} has endpoints {a.ends(e)} vs {b.ends(e)}"
    return "graphs are equal"


def compose_morphisms(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """Return ``g . f`` (first ``f``, then ``g``)."""
    if f.cod != g.dom:
        raise CompositionError(f"cannot compose: codomain of f and domain of g differ: {_first_difference(f.cod, g.dom)}")
    gn, ge = g.node_map, g.edge_map
    return GraphMorphism(
        f.dom,
        g.cod,
        {n: gn[m] for n, m in f.node_map.items()},
        {e: ge[d] for e, d in f.edge_map.items()},
        check=False,
    )


def compose_all(*fs: GraphMorphism) -> GraphMorphism:
    """Compose in diagrammatic order: ``compose_all(f, g, h) == h . g . f``."""
    out = fs[0]
    for f in fs[1:]:
        out = compose_morphisms(out, f)
    return out


def classify_morphism(f: GraphMorphism) -> Classification:
    nm, em = f.node_map, f.edge_map
    mono = len(set(nm.values())) == len(nm) and len(set(em.values())) == len(em)
    epi = set(nm.values()) == f.cod.nodes and set(em.values()) == f.cod.edges
    return Classification(mono, epi, mono and epi)


def is_mono(f: GraphMorphism) -> bool:
    return classify_morphism(f).mono


def is_iso(f: GraphMorphism) -> bool:
    return classify_morphism(f).iso


def is_identity(f: GraphMorphism) -> bool:
    return f.dom == f.cod and all(k == v for k, v in f.node_map.items()) and all(k == v for k, v in f.edge_map.items())


def inverse(f: GraphMorphism) -> GraphMorphism:
    if not classify_morphism(f).iso:
        raise MalformedGraphError("morphism is not an isomorphism")
    return GraphMorphism(
        f.cod,
        f.dom,
        {m: n for n, m in f.node_map.items()},
        {d: e for e, d in f.edge_map.items()},
        check=False,
    )


def relabel(g: Graph, node_map: Mapping[int, int], edge_map: Mapping[int, int] | None = None) -> GraphMorphism:
    """Rename identifiers of ``g``; returns the isomorphism from ``g`` onto the renamed copy.

    Identifiers absent from the maps keep their value.
    """
    edge_map = edge_map or {}
    nm = {n: node_map.get(n, n) for n in g.nodes}
    em = {e: edge_map.get(e, e) for e in g.edges}
    if len(set(nm.values())) != len(nm) or len(set(em.values())) != len(em):
        raise MalformedGraphError("relabeling is not injective")
    h = Graph(nm.values(), {em[e]: (nm[s], nm[t]) for e, s, t in g.edge_items()})
    return GraphMorphism(g, h, nm, em, check=False)


def canonical_relabel(g: Graph) -> GraphMorphism:
    """Renumber nodes and edges to ``0..n-1`` preserving their sorted order."""
    return relabel(
        g,
        {n: i for i, n in enumerate(sorted(g.nodes))},
        {e: i for i, e in enumerate(sorted(g.edges))},
    )


def shift(g: Graph, by_nodes: int, by_edges: int | None = None) -> GraphMorphism:
    by_edges = by_nodes if by_edges is None else by_edges
    return relabel(g, {n: n + by_nodes for n in g.nodes}, {e: e + by_edges for e in g.edges})


def inclusion(sub: Graph, g: Graph) -> GraphMorphism:
    """The inclusion of a subgraph sharing identifiers with ``g``."""
    return GraphMorphism(sub, g, {n: n for n in sub.nodes}, {e: e for e in sub.edges})


def image(f: GraphMorphism) -> Graph:
    return f.cod.subgraph(set(f.node_map.values()), set(f.edge_map.values()))


# -- enumeration ---------------------------------------------------------------


def candidate_count(g: Graph, h: Graph, fixed_nodes=(), fixed_edges=()) -> int:
    free_nodes = len(g.nodes) - len(set(fixed_nodes))
    free_edges = len(g.edges) - len(set(fixed_edges))
    return len(h.nodes) ** free_nodes * len(h.edges) ** free_edges


def iter_morphisms(
    g: Graph,
    h: Graph,
    fixed_nodes: Mapping[int, int] | None = None,
    fixed_edges: Mapping[int, int] | None = None,
    injective: bool = False,
) -> Iterator[GraphMorphism]:
    """Backtracking enumeration of morphisms ``g -> h`` extending a partial assignment.

    Morphisms come out in lexicographic order of their images (nodes in
    increasing id order first, then edges). No budget check.
    """
    fixed_nodes = dict(fixed_nodes or {})
    fixed_edges = dict(fixed_edges or {})
    g_nodes = sorted(g.nodes)
    h_nodes = sorted(h.nodes)
    g_edges = sorted(g.edges)
    between = h.edges_between()
    # each edge is checked when its later endpoint (in g_nodes order) is assigned
    pos = {n: i for i, n in enumerate(g_nodes)}
    closing: dict[int, list[int]] = defaultdict(list)
    for e, s, t in g.edge_items():
        closing[max(pos[s], pos[t])].append(e)

    for n, m in fixed_nodes.items():
        if n not in g.nodes or m not in h.nodes:
            return
    for e, d in fixed_edges.items():
        if e not in g.src or d not in h.src:
            return

    node_map: dict[int, int] = {}
    used_nodes: set[int] = set()

    def node_ok(i: int) -> bool:
        for e in closing.get(i, ()):
            s, t = node_map[g.src[e]], node_map[g.tgt[e]]
            if e in fixed_edges:
                if h.ends(fixed_edges[e]) != (s, t):
                    return False
            elif (s, t) not in between:
                return False
        return True

    def assign_edges(i: int, edge_map: dict[int, int], used: set[int]) -> Iterator[GraphMorphism]:
        if i == len(g_edges):
            yield GraphMorphism(g, h, dict(node_map), dict(edge_map), check=False)
            return
        e = g_edges[i]
        if e in fixed_edges:
            options = [fixed_edges[e]]
        else:
            options = between.get((node_map[g.src[e]], node_map[g.tgt[e]]), [])
        for d in options:
            if injective and d in used:
                continue
            edge_map[e] = d
            used.add(d)
            yield from assign_edges(i + 1, edge_map, used)
            used.discard(d)
            del edge_map[e]

    def assign_nodes(i: int) -> Iterator[GraphMorphism]:
        if i == len(g_nodes):
            yield from assign_edges(0, {}, set())
            return
        n = g_nodes[i]
        options = [fixed_nodes[n]] if n in fixed_nodes else h_nodes
        for m in options:
            if injective and m in used_nodes:
                continue
            node_map[n] = m
            used_nodes.add(m)
            if node_ok(i):
                yield from assign_nodes(i + 1)
            used_nodes.discard(m)
            del node_map[n]

    yield from assign_nodes(0)


def enumerate_morphisms(
    g: Graph,
    h: Graph,
    cap: int = DEFAULT_ENUMERATION_CAP,
    injective: bool = False,
) -> list[GraphMorphism]:
    """All morphisms ``g -> h`` in lexicographic order.

    Raises ``BudgetExceeded`` when ``|h.nodes|**|g.nodes| * |h.edges|**|g.edges|``
    exceeds ``cap``; callers are expected to shrink the instance.
    """
    count = candidate_count(g, h)
    if count > cap:
        raise BudgetExceeded(f"{count} candidate assignments exceed the enumeration cap {cap}")
    return list(iter_morphisms(g, h, injective=injective))


def brute_force_morphisms(g: Graph, h: Graph) -> list[GraphMorphism]:
    """Every morphism ``g -> h`` by filtering the full product of assignments.

    Exponential; kept as an independent oracle for ``enumerate_morphisms``.
    """
    g_nodes, g_edges = sorted(g.nodes), sorted(g.edges)
    out = []
    for images in itertools.product(sorted(h.nodes), repeat=len(g_nodes)):
        nm = dict(zip(g_nodes, images))
        for eimages in itertools.product(sorted(h.edges), repeat=len(g_edges)):
            em = dict(zip(g_edges, eimages))
            if all(h.ends(em[e]) == (nm[g.src[e]], nm[g.tgt[e]]) for e in g_edges):
                out.append(GraphMorphism(g, h, nm, em, check=False))
    return out


# -- random generation ---------------------------------------------------------

EDGE_PROBABILITY = 0.3
MAX_PARALLEL = 2


def generate_random_graph(seed: int | random.Random, max_nodes: int, max_edges: int) -> Graph:
    """Deterministic random multigraph.

    The node count is uniform on ``[0, max_nodes]``. Ordered node pairs (loops
    included) are visited in a seeded order; each gets an edge with
    probability 0.3, and a second parallel edge with the same probability,
    until ``max_edges`` edges exist.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = rng.randint(0, max_nodes)
    pairs = [(s, t) for s in range(n) for t in range(n)]
    rng.shuffle(pairs)
    edges: list[tuple[int, int]] = []
    for pair in pairs:
        for _ in range(MAX_PARALLEL):
            if len(edges) >= max_edges or rng.random() >= EDGE_PROBABILITY:
                break
            edges.append(pair)
    return Graph.from_edges(range(n), edges)
