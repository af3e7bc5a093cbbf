"""Cospans of graphs (open graphs) and spans with invertible legs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import CompositionError, MalformedGraphError
from .graph import (
    Graph,
    GraphMorphism,
    classify_morphism,
    compose_morphisms,
    identity,
    inverse,
)
from .isomorphism import DEFAULT_SEARCH_BUDGET, find_commuting_isomorphism
from .limits import coproduct, coproduct_morphisms, pullback, pushout, swap_iso


@dataclass(frozen=True)
class Cospan:
    """``left_foot -> apex <- right_foot``."""

    left_leg: GraphMorphism
    right_leg: GraphMorphism

    def __post_init__(self):
        if self.left_leg.cod != self.right_leg.cod:
            raise MalformedGraphError("cospan legs must share their codomain (the apex)")

    @property
    def left_foot(self) -> Graph:
        return self.left_leg.dom

    @property
    def right_foot(self) -> Graph:
        return self.right_leg.dom

    @property
    def apex(self) -> Graph:
        return self.left_leg.cod

    def reversed(self) -> Cospan:
        return Cospan(self.right_leg, self.left_leg)


@dataclass(frozen=True)
class VerticalSpan:
    """``top <- mid -> bottom`` with both legs isomorphisms."""

    up_leg: GraphMorphism
    down_leg: GraphMorphism

    def __post_init__(self):
        if self.up_leg.dom != self.down_leg.dom:
            raise MalformedGraphError("span legs must share their domain")
        if not classify_morphism(self.up_leg).iso or not classify_morphism(self.down_leg).iso:
            raise MalformedGraphError("vertical span legs must be isomorphisms")

    @property
    def top(self) -> Graph:
        return self.up_leg.cod

    @property
    def mid(self) -> Graph:
        return self.up_leg.dom

    @property
    def bottom(self) -> Graph:
        return self.down_leg.cod

    def flipped(self) -> VerticalSpan:
        return VerticalSpan(self.down_leg, self.up_leg)

    @property
    def is_identity(self) -> bool:
        return self.up_leg == identity(self.mid) and self.down_leg == identity(self.mid)


def identity_cospan(x: Graph) -> Cospan:
    return Cospan(identity(x), identity(x))


def identity_span(x: Graph) -> VerticalSpan:
    return VerticalSpan(identity(x), identity(x))


def span_of_iso(f: GraphMorphism) -> VerticalSpan:
    """The span ``dom f <- dom f -> cod f`` representing an isomorphism."""
    return VerticalSpan(identity(f.dom), f)


def compose_cospans(m: Cospan, n: Cospan) -> Cospan:
    """``m`` followed by ``n``, glued along ``m.right_foot == n.left_foot``."""
    if m.right_foot != n.left_foot:
        raise CompositionError(
            f"cospans do not share a boundary: right foot {m.right_foot!r} vs left foot {n.left_foot!r}"
        )
    po = pushout(m.right_leg, n.left_leg)
    return Cospan(
        compose_morphisms(m.left_leg, po.left_inclusion),
        compose_morphisms(n.right_leg, po.right_inclusion),
    )


def compose_cospan_chain(*cospans: Cospan) -> Cospan:
    """Left-nested composite ``((c1 ; c2) ; c3) ; ...``."""
    out = cospans[0]
    for c in cospans[1:]:
        out = compose_cospans(out, c)
    return out


def tensor_cospans(m: Cospan, n: Cospan) -> Cospan:
    return Cospan(
        coproduct_morphisms(m.left_leg, n.left_leg),
        coproduct_morphisms(m.right_leg, n.right_leg),
    )


def compose_spans(f: VerticalSpan, g: VerticalSpan) -> VerticalSpan:
    """``f`` then ``g`` (``f.bottom == g.top``), by pullback."""
    if f.bottom != g.top:
        raise CompositionError("spans do not share a boundary")
    pb = pullback(f.down_leg, g.up_leg)
    return VerticalSpan(
        compose_morphisms(pb.left_projection, f.up_leg),
        compose_morphisms(pb.right_projection, g.down_leg),
    )


def tensor_spans(f: VerticalSpan, g: VerticalSpan) -> VerticalSpan:
    return VerticalSpan(
        coproduct_morphisms(f.up_leg, g.up_leg),
        coproduct_morphisms(f.down_leg, g.down_leg),
    )


def spans_isomorphic(f: VerticalSpan, g: VerticalSpan, budget: int = DEFAULT_SEARCH_BUDGET) -> GraphMorphism | None:
    """An isomorphism ``f.mid -> g.mid`` over both legs, if the spans share ends."""
    if f.top != g.top or f.bottom != g.bottom:
        raise CompositionError("spans have different ends")
    return find_commuting_isomorphism(
        f.mid, g.mid, outgoing=[(f.up_leg, g.up_leg), (f.down_leg, g.down_leg)], budget=budget
    )


def cospans_isomorphic(m: Cospan, n: Cospan, budget: int = DEFAULT_SEARCH_BUDGET) -> GraphMorphism | None:
    """An isomorphism of apexes commuting with both legs, if the cospans share feet."""
    if m.left_foot != n.left_foot or m.right_foot != n.right_foot:
        raise CompositionError("cospans have different feet")
    return find_commuting_isomorphism(
        m.apex, n.apex, incoming=[(m.left_leg, n.left_leg), (m.right_leg, n.right_leg)], budget=budget
    )


def align_cospans(m: Cospan, n: Cospan, budget: int = DEFAULT_SEARCH_BUDGET) -> Cospan:
    """Rewrite ``n`` so its left foot is exactly ``m.right_foot``.

    Any isomorphism between the two feet is used; raises if there is none.
    """
    if m.right_foot == n.left_foot:
        return n
    iso = find_commuting_isomorphism(m.right_foot, n.left_foot, budget=budget)
    if iso is None:
        raise CompositionError("feet are not isomorphic; cospans cannot be aligned")
    return Cospan(compose_morphisms(iso, n.left_leg), n.right_leg)


def companion_cospan(f: VerticalSpan) -> Cospan:
    """The cospan ``top -> mid <- bottom`` whose legs invert those of ``f``."""
    return Cospan(inverse(f.up_leg), inverse(f.down_leg))


class SwapStructure(NamedTuple):
    vertical: VerticalSpan
    horizontal: Cospan


def swap_structure(x: Graph, y: Graph) -> SwapStructure:
    """The braiding ``x + y -> y + x`` as a vertical span and as its companion cospan."""
    xy = coproduct(x, y).object
    vertical = VerticalSpan(identity(xy), swap_iso(x, y))
    return SwapStructure(vertical, companion_cospan(vertical))
