"""Double-pushout rewriting of open graphs.

An open graph is a cospan whose feet have no edges. A rule is a globular
cell ``L <- K -> R`` between open graphs, read top to bottom: ``L`` is the
pattern, ``K`` what survives, ``R`` the replacement.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cells import TwoCell, flip_cell, mirror_cell
from .cospans import Cospan, identity_span
from .errors import BudgetExceeded, BoundaryDeletionError, CompositionError, DanglingError, MalformedGraphError
from .graph import (
    DEFAULT_ENUMERATION_CAP,
    Graph,
    GraphMorphism,
    classify_morphism,
    compose_morphisms,
    inclusion,
    is_identity,
    iter_morphisms,
)
from .limits import pushout


def is_open_graph(m: Cospan) -> bool:
    return m.left_foot.is_edgeless and m.right_foot.is_edgeless


@dataclass(frozen=True)
class OpenGraphRule:
    cell: TwoCell

    def __post_init__(self):
        c = self.cell
        for name, row in (("top", c.top), ("mid", c.mid), ("bottom", c.bottom)):
            if not is_open_graph(row):
                raise MalformedGraphError(f"{name} row of a rule must have edgeless feet")
        for name, span in (("left", c.left), ("right", c.right)):
            if not (is_identity(span.up_leg) and is_identity(span.down_leg)):
                raise MalformedGraphError(f"{name} side of a rule must be an identity span")

    @classmethod
    def from_rows(cls, top: Cospan, mid: Cospan, bottom: Cospan, up: GraphMorphism, down: GraphMorphism) -> OpenGraphRule:
        """Build a rule from its three rows and inner legs; sides are identities."""
        return cls(TwoCell(top, mid, bottom, up, down, identity_span(mid.left_foot), identity_span(mid.right_foot)))

    @property
    def lhs(self) -> Cospan:
        return self.cell.top

    @property
    def interface(self) -> Cospan:
        return self.cell.mid

    @property
    def rhs(self) -> Cospan:
        return self.cell.bottom


@dataclass(frozen=True)
class MatchResult:
    """A monic ``match`` of a pattern apex into a host apex.

    ``boundary_alignment`` holds the pattern's feet as seen in the host
    apex: ``(match . lhs.left_leg, match . lhs.right_leg)``.
    """

    match: GraphMorphism
    boundary_alignment: tuple[GraphMorphism, GraphMorphism]


@dataclass(frozen=True)
class ComplementResult:
    """``K -> D -> G`` completing ``K -> L -> G`` to a pushout square."""

    object: Graph
    from_interface: GraphMorphism
    into_host: GraphMorphism


@dataclass(frozen=True)
class RewriteResult:
    result: Cospan
    witness: TwoCell
    comatch: MatchResult
    complement: ComplementResult


def _match_result(rule_top: Cospan, m: GraphMorphism) -> MatchResult:
    return MatchResult(m, (compose_morphisms(rule_top.left_leg, m), compose_morphisms(rule_top.right_leg, m)))


def host_boundary(host: Cospan) -> set[int]:
    return set(host.left_leg.node_map.values()) | set(host.right_leg.node_map.values())


def deleted_nodes(rule: OpenGraphRule, m: GraphMorphism) -> set[int]:
    kept = set(rule.cell.up.node_map.values())
    return {m.node_map[n] for n in rule.cell.top.apex.nodes if n not in kept}


def find_matches(
    rule: OpenGraphRule,
    host: Cospan,
    cap: int = DEFAULT_ENUMERATION_CAP,
    strict_boundary: bool = False,
) -> list[MatchResult]:
    """All monic matches of the pattern into ``host``, in lexicographic order.

    A match is compatible with the host boundary when it deletes no node in
    the image of the host's feet. With ``strict_boundary`` the pattern's feet
    must moreover land on host boundary nodes. Dangling edges are not
    filtered; :func:`apply_rule` reports them.
    """
    if not is_open_graph(host):
        raise CompositionError("host must be an open graph")
    boundary = host_boundary(host)
    top = rule.cell.top
    feet_nodes = set(top.left_leg.node_map.values()) | set(top.right_leg.node_map.values())
    out = []
    seen = 0
    for m in iter_morphisms(top.apex, host.apex, injective=True):
        seen += 1
        if seen > cap:
            raise BudgetExceeded(f"more than {cap} candidate matches")
        if deleted_nodes(rule, m) & boundary:
            continue
        if strict_boundary and any(m.node_map[n] not in boundary for n in feet_nodes):
            continue
        out.append(_match_result(top, m))
    return out


def pushout_complement(k: GraphMorphism, m: GraphMorphism) -> ComplementResult:
    """Delete ``m(L - k(K))`` from ``G``; raise ``DanglingError`` if that strands an edge.

    ``D`` keeps the host's identifiers, so ``D -> G`` is an inclusion.
    """
    if k.cod != m.dom:
        raise CompositionError("pushout complement needs k: K -> L and m: L -> G")
    if not classify_morphism(k).mono or not classify_morphism(m).mono:
        raise CompositionError("pushout complement needs monic k and m")
    g = m.cod
    kept_nodes = set(k.node_map.values())
    kept_edges = set(k.edge_map.values())
    del_nodes = {m.node_map[n] for n in k.cod.nodes if n not in kept_nodes}
    del_edges = {m.edge_map[e] for e in k.cod.edges if e not in kept_edges}
    matched_edges = set(m.edge_map.values())
    for e, s, t in g.edge_items():
        if e in matched_edges:
            continue
        for end in (s, t):
            if end in del_nodes:
                raise DanglingError(e, end)
    d = g.subgraph(g.nodes - del_nodes, set(g.edges) - del_edges)
    into_host = inclusion(d, g)
    km = compose_morphisms(k, m)
    from_interface = GraphMorphism(k.dom, d, dict(km.node_map), dict(km.edge_map))
    return ComplementResult(d, from_interface, into_host)


def _restrict(f: GraphMorphism, d: Graph) -> GraphMorphism:
    """Corestrict ``f`` to a subgraph ``d`` of its codomain."""
    return GraphMorphism(f.dom, d, dict(f.node_map), dict(f.edge_map))


def apply_rule(rule: OpenGraphRule, host: Cospan, match: MatchResult) -> RewriteResult:
    """Rewrite ``host`` along ``match``; the witness cell runs host => result."""
    c = rule.cell
    m = match.match
    if m.dom != c.top.apex or m.cod != host.apex:
        raise CompositionError("match does not run from the pattern apex to the host apex")
    if not classify_morphism(m).mono:
        raise CompositionError("matches must be monic")
    boundary = host_boundary(host)
    for n in sorted(deleted_nodes(rule, m)):
        if n in boundary:
            raise BoundaryDeletionError(n)
    comp = pushout_complement(c.up, m)
    d = comp.object
    po = pushout(comp.from_interface, c.down)
    into_result = po.left_inclusion
    mid = Cospan(_restrict(host.left_leg, d), _restrict(host.right_leg, d))
    result = Cospan(compose_morphisms(mid.left_leg, into_result), compose_morphisms(mid.right_leg, into_result))
    witness = TwoCell(
        host, mid, result, comp.into_host, into_result,
        identity_span(host.left_foot), identity_span(host.right_foot),
    )
    return RewriteResult(result, witness, _match_result(c.bottom, po.right_inclusion), comp)


def rewrite_all(rule: OpenGraphRule, host: Cospan, cap: int = DEFAULT_ENUMERATION_CAP) -> list[RewriteResult]:
    """Apply ``rule`` at every match that satisfies the dangling condition."""
    out = []
    for match in find_matches(rule, host, cap=cap):
        try:
            out.append(apply_rule(rule, host, match))
        except DanglingError:
            continue
    return out


def dualize_rule(rule: OpenGraphRule) -> OpenGraphRule:
    """Exchange the input and output boundaries of every row."""
    return OpenGraphRule(mirror_cell(rule.cell))


def invert_rule(rule: OpenGraphRule) -> OpenGraphRule:
    """Read the rule bottom to top."""
    return OpenGraphRule(flip_cell(rule.cell))


# -- builders ------------------------------------------------------------------


def open_graph(apex: Graph, inputs, outputs) -> Cospan:
    """The cospan picking out ``inputs`` and ``outputs`` as discrete feet with the same ids."""
    ins, outs = Graph.discrete(inputs), Graph.discrete(outputs)
    return Cospan(inclusion(ins, apex), inclusion(outs, apex))


def make_rule(lhs: Graph, interface: Graph, rhs: Graph, inputs, outputs) -> OpenGraphRule:
    """A rule whose interface is a subgraph of both sides, sharing identifiers.

    The boundary nodes must lie in the interface.
    """
    return OpenGraphRule.from_rows(
        open_graph(lhs, inputs, outputs),
        open_graph(interface, inputs, outputs),
        open_graph(rhs, inputs, outputs),
        inclusion(interface, lhs),
        inclusion(interface, rhs),
    )
