"""Monic spans of cospans: the squares of the double category.

A cell is a 3x3 commuting grid of graphs::

    top.left_foot  -> top.apex    <- top.right_foot
         ^ left.up       ^ up            ^ right.up
    mid.left_foot  -> mid.apex    <- mid.right_foot
         v left.down     v down          v right.down
    bot.left_foot  -> bot.apex    <- bot.right_foot

with ``up`` and ``down`` monic and the side spans invertible. Composition of
cospans is written in diagrammatic order throughout: ``compose_cospans(m, n)``
is ``m`` followed by ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cospans import (
    Cospan,
    VerticalSpan,
    companion_cospan,
    compose_cospans,
    identity_cospan,
    identity_span,
    spans_isomorphic,
    tensor_cospans,
    tensor_spans,
)
from .errors import CompositionError, InvariantError, MalformedGraphError
from .graph import (
    Graph,
    GraphMorphism,
    classify_morphism,
    compose_morphisms,
    identity,
    inverse,
    is_identity,
)
from .isomorphism import DEFAULT_SEARCH_BUDGET, find_commuting_isomorphism
from .limits import CoconeResult, coproduct, coproduct_morphisms, copair, pair, pullback, pushout


@dataclass(frozen=True)
class TwoCell:
    top: Cospan
    mid: Cospan
    bottom: Cospan
    up: GraphMorphism
    down: GraphMorphism
    left: VerticalSpan
    right: VerticalSpan

    def __post_init__(self):
        check_cell(self)

    @property
    def is_globular(self) -> bool:
        return self.left.is_identity and self.right.is_identity


def check_cell(c: TwoCell) -> None:
    """Raise ``MalformedGraphError`` naming the first broken part of ``c``."""
    if c.up.dom != c.mid.apex or c.up.cod != c.top.apex:
        raise MalformedGraphError("up leg must run from the middle apex to the top apex")
    if c.down.dom != c.mid.apex or c.down.cod != c.bottom.apex:
        raise MalformedGraphError("down leg must run from the middle apex to the bottom apex")
    if not classify_morphism(c.up).mono:
        raise MalformedGraphError("up leg is not monic")
    if not classify_morphism(c.down).mono:
        raise MalformedGraphError("down leg is not monic")
    for name, span, feet in (
        ("left", c.left, (c.top.left_foot, c.mid.left_foot, c.bottom.left_foot)),
        ("right", c.right, (c.top.right_foot, c.mid.right_foot, c.bottom.right_foot)),
    ):
        if (span.top, span.mid, span.bottom) != feet:
            raise MalformedGraphError(f"{name} span does not connect the {name} feet of the three rows")
    squares = (
        ("top-left", c.mid.left_leg, c.up, c.left.up_leg, c.top.left_leg),
        ("bottom-left", c.mid.left_leg, c.down, c.left.down_leg, c.bottom.left_leg),
        ("top-right", c.mid.right_leg, c.up, c.right.up_leg, c.top.right_leg),
        ("bottom-right", c.mid.right_leg, c.down, c.right.down_leg, c.bottom.right_leg),
    )
    for name, a, b, x, y in squares:
        if compose_morphisms(a, b) != compose_morphisms(x, y):
            raise MalformedGraphError(f"{name} square of the cell does not commute")


def identity_cell(m: Cospan) -> TwoCell:
    ia = identity(m.apex)
    return TwoCell(m, m, m, ia, ia, identity_span(m.left_foot), identity_span(m.right_foot))


def unit_cell(f: VerticalSpan) -> TwoCell:
    """The square on identity cospans whose every column is ``f``."""
    return TwoCell(
        identity_cospan(f.top),
        identity_cospan(f.mid),
        identity_cospan(f.bottom),
        f.up_leg,
        f.down_leg,
        f,
        f,
    )


def flip_cell(c: TwoCell) -> TwoCell:
    """Turn a cell upside down (its inverse when it is invertible)."""
    return TwoCell(c.bottom, c.mid, c.top, c.down, c.up, c.left.flipped(), c.right.flipped())


def mirror_cell(c: TwoCell) -> TwoCell:
    """Reverse every row, exchanging left and right boundaries."""
    return TwoCell(c.top.reversed(), c.mid.reversed(), c.bottom.reversed(), c.up, c.down, c.right, c.left)


def _monic_or_bug(f: GraphMorphism, what: str) -> None:
    if not classify_morphism(f).mono:
        raise InvariantError(f"{what} is not monic")


def vertical_compose(a: TwoCell, b: TwoCell) -> TwoCell:
    """``a`` stacked on top of ``b``; the middle apex is a pullback."""
    if a.bottom != b.top:
        raise CompositionError("vertical composition needs a.bottom == b.top")
    pb = pullback(a.down, b.up)
    sides = []
    feet_legs = []
    for sa, sb, la, lb in (
        (a.left, b.left, a.mid.left_leg, b.mid.left_leg),
        (a.right, b.right, a.mid.right_leg, b.mid.right_leg),
    ):
        side = pullback(sa.down_leg, sb.up_leg)
        sides.append(
            VerticalSpan(
                compose_morphisms(side.left_projection, sa.up_leg),
                compose_morphisms(side.right_projection, sb.down_leg),
            )
        )
        feet_legs.append(
            pair(pb, compose_morphisms(side.left_projection, la), compose_morphisms(side.right_projection, lb))
        )
    up = compose_morphisms(pb.left_projection, a.up)
    down = compose_morphisms(pb.right_projection, b.down)
    _monic_or_bug(up, "up leg of vertical composite")
    _monic_or_bug(down, "down leg of vertical composite")
    return TwoCell(a.top, Cospan(*feet_legs), b.bottom, up, down, sides[0], sides[1])


def vertical_compose_all(*cells: TwoCell) -> TwoCell:
    out = cells[0]
    for c in cells[1:]:
        out = vertical_compose(out, c)
    return out


def horizontal_compose(a: TwoCell, b: TwoCell) -> TwoCell:
    """``a`` followed by ``b`` along ``a.right == b.left``; every row is glued by pushout."""
    if a.right != b.left:
        raise CompositionError("horizontal composition needs a.right == b.left")
    top = pushout(a.top.right_leg, b.top.left_leg)
    mid = pushout(a.mid.right_leg, b.mid.left_leg)
    bot = pushout(a.bottom.right_leg, b.bottom.left_leg)
    up = copair(mid, compose_morphisms(a.up, top.left_inclusion), compose_morphisms(b.up, top.right_inclusion))
    down = copair(mid, compose_morphisms(a.down, bot.left_inclusion), compose_morphisms(b.down, bot.right_inclusion))
    _monic_or_bug(up, "up leg of horizontal composite")
    _monic_or_bug(down, "down leg of horizontal composite")

    def row(c: CoconeResult, m: Cospan, n: Cospan) -> Cospan:
        return Cospan(compose_morphisms(m.left_leg, c.left_inclusion), compose_morphisms(n.right_leg, c.right_inclusion))

    return TwoCell(
        row(top, a.top, b.top),
        row(mid, a.mid, b.mid),
        row(bot, a.bottom, b.bottom),
        up,
        down,
        a.left,
        b.right,
    )


def horizontal_compose_all(*cells: TwoCell) -> TwoCell:
    out = cells[0]
    for c in cells[1:]:
        out = horizontal_compose(out, c)
    return out


def tensor_cells(a: TwoCell, b: TwoCell) -> TwoCell:
    up = coproduct_morphisms(a.up, b.up)
    down = coproduct_morphisms(a.down, b.down)
    _monic_or_bug(up, "up leg of tensor")
    _monic_or_bug(down, "down leg of tensor")
    return TwoCell(
        tensor_cospans(a.top, b.top),
        tensor_cospans(a.mid, b.mid),
        tensor_cospans(a.bottom, b.bottom),
        up,
        down,
        tensor_spans(a.left, b.left),
        tensor_spans(a.right, b.right),
    )


def cells_isomorphic(a: TwoCell, b: TwoCell, budget: int = DEFAULT_SEARCH_BUDGET) -> GraphMorphism | None:
    """An isomorphism ``a.mid.apex -> b.mid.apex`` making the two cells agree.

    Both cells must have the same top and bottom cospans and side spans;
    otherwise ``CompositionError`` is raised.
    """
    if a.top != b.top or a.bottom != b.bottom:
        raise CompositionError("cells have different top or bottom cospans")
    if a.left != b.left or a.right != b.right:
        raise CompositionError("cells have different side spans")
    return find_commuting_isomorphism(
        a.mid.apex,
        b.mid.apex,
        incoming=[(a.mid.left_leg, b.mid.left_leg), (a.mid.right_leg, b.mid.right_leg)],
        outgoing=[(a.up, b.up), (a.down, b.down)],
        budget=budget,
    )


def rebase_sides(c: TwoCell, left: VerticalSpan, right: VerticalSpan, budget: int = DEFAULT_SEARCH_BUDGET) -> TwoCell | None:
    """Replace the side spans of ``c`` by isomorphic ones, or ``None`` if they are not isomorphic."""
    legs = []
    for old, new, leg in ((c.left, left, c.mid.left_leg), (c.right, right, c.mid.right_leg)):
        if old == new:
            legs.append(leg)
            continue
        if old.top != new.top or old.bottom != new.bottom:
            raise CompositionError("replacement span has different ends")
        iso = spans_isomorphic(old, new, budget=budget)
        if iso is None:
            return None
        legs.append(compose_morphisms(inverse(iso), leg))
    return TwoCell(c.top, Cospan(*legs), c.bottom, c.up, c.down, left, right)


def cells_equivalent(a: TwoCell, b: TwoCell, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Whether ``a`` and ``b`` represent the same 2-morphism.

    Side spans are compared up to isomorphism (they are taken up to
    isomorphism as vertical 1-morphisms); top and bottom must agree exactly.
    """
    rebased = rebase_sides(a, b.left, b.right, budget=budget)
    if rebased is None:
        return False
    return cells_isomorphic(rebased, b, budget=budget) is not None


# -- structural cells ------------------------------------------------------------


def comparison_cell(src: Cospan, dst: Cospan, phi: GraphMorphism) -> TwoCell:
    """The globular cell ``src => dst`` given by an apex isomorphism over the feet."""
    if src.left_foot != dst.left_foot or src.right_foot != dst.right_foot:
        raise CompositionError("comparison cell needs cospans with the same feet")
    if not classify_morphism(phi).iso:
        raise InvariantError("comparison map between apexes is not invertible")
    if compose_morphisms(src.left_leg, phi) != dst.left_leg or compose_morphisms(src.right_leg, phi) != dst.right_leg:
        raise InvariantError("comparison map does not commute with the cospan legs")
    return TwoCell(
        src, src, dst, identity(src.apex), phi,
        identity_span(src.left_foot), identity_span(src.right_foot),
    )


def associator(m: Cospan, n: Cospan, p: Cospan) -> TwoCell:
    """``(m ; n) ; p => m ; (n ; p)``."""
    mn = pushout(m.right_leg, n.left_leg)
    mn_c = Cospan(compose_morphisms(m.left_leg, mn.left_inclusion), compose_morphisms(n.right_leg, mn.right_inclusion))
    src_po = pushout(mn_c.right_leg, p.left_leg)
    np_ = pushout(n.right_leg, p.left_leg)
    np_c = Cospan(compose_morphisms(n.left_leg, np_.left_inclusion), compose_morphisms(p.right_leg, np_.right_inclusion))
    dst_po = pushout(m.right_leg, np_c.left_leg)
    into_m = dst_po.left_inclusion
    into_n = compose_morphisms(np_.left_inclusion, dst_po.right_inclusion)
    into_p = compose_morphisms(np_.right_inclusion, dst_po.right_inclusion)
    phi = copair(src_po, copair(mn, into_m, into_n), into_p)
    return comparison_cell(compose_cospans(mn_c, p), compose_cospans(m, np_c), phi)


def left_unitor(m: Cospan) -> TwoCell:
    """``U ; m => m`` for the identity cospan on ``m.left_foot``."""
    u = identity_cospan(m.left_foot)
    po = pushout(u.right_leg, m.left_leg)
    phi = copair(po, m.left_leg, identity(m.apex))
    return comparison_cell(compose_cospans(u, m), m, phi)


def right_unitor(m: Cospan) -> TwoCell:
    """``m ; U => m`` for the identity cospan on ``m.right_foot``."""
    u = identity_cospan(m.right_foot)
    po = pushout(m.right_leg, u.left_leg)
    phi = copair(po, identity(m.apex), m.right_leg)
    return comparison_cell(compose_cospans(m, u), m, phi)


def structural_cell(kind: str, *cospans: Cospan) -> TwoCell:
    """Associator (three cospans) or a unitor (one cospan) as a globular cell."""
    try:
        builder, arity = {
            "associator": (associator, 3),
            "left_unitor": (left_unitor, 1),
            "right_unitor": (right_unitor, 1),
        }[kind]
    except KeyError:
        raise ValueError(f"unknown structural cell {kind!r}") from None
    if len(cospans) != arity:
        raise CompositionError(f"{kind} takes {arity} cospan(s), got {len(cospans)}")
    return builder(*cospans)


def interchanger(m1: Cospan, n1: Cospan, m2: Cospan, n2: Cospan) -> TwoCell:
    """``(m1 + n1) ; (m2 + n2) => (m1 ; m2) + (n1 ; n2)``."""
    left = tensor_cospans(m1, n1)
    right = tensor_cospans(m2, n2)
    src = compose_cospans(left, right)
    src_po = pushout(left.right_leg, right.left_leg)
    po_m = pushout(m1.right_leg, m2.left_leg)
    po_n = pushout(n1.right_leg, n2.left_leg)
    dst = tensor_cospans(
        Cospan(compose_morphisms(m1.left_leg, po_m.left_inclusion), compose_morphisms(m2.right_leg, po_m.right_inclusion)),
        Cospan(compose_morphisms(n1.left_leg, po_n.left_inclusion), compose_morphisms(n2.right_leg, po_n.right_inclusion)),
    )
    co = coproduct(po_m.object, po_n.object)
    from_first = copair(
        coproduct(m1.apex, n1.apex),
        compose_morphisms(po_m.left_inclusion, co.left_inclusion),
        compose_morphisms(po_n.left_inclusion, co.right_inclusion),
    )
    from_second = copair(
        coproduct(m2.apex, n2.apex),
        compose_morphisms(po_m.right_inclusion, co.left_inclusion),
        compose_morphisms(po_n.right_inclusion, co.right_inclusion),
    )
    return comparison_cell(src, dst, copair(src_po, from_first, from_second))


def unit_interchanger(a: Graph, b: Graph) -> TwoCell:
    """``U(a + b) => U(a) + U(b)``; both sides coincide on representatives."""
    src = identity_cospan(coproduct(a, b).object)
    dst = tensor_cospans(identity_cospan(a), identity_cospan(b))
    return comparison_cell(src, dst, identity(src.apex))


def globular_interchanger(kind: str, *args) -> TwoCell:
    if kind == "x":
        if len(args) != 4:
            raise CompositionError("the x interchanger takes four cospans m1, n1, m2, n2")
        return interchanger(*args)
    if kind == "u":
        if len(args) != 2:
            raise CompositionError("the u interchanger takes two graphs")
        return unit_interchanger(*args)
    raise ValueError(f"unknown interchanger {kind!r}")


# -- companions and conjoints ----------------------------------------------------


class CompanionData(NamedTuple):
    companion: Cospan
    conjoint: Cospan
    # companion_counit: companion => U(bottom), sides (f, id)
    # companion_unit:   U(top) => companion,    sides (id, f)
    companion_counit: TwoCell
    companion_unit: TwoCell
    conjoint_counit: TwoCell
    conjoint_unit: TwoCell

    @property
    def cells(self) -> tuple[TwoCell, TwoCell, TwoCell, TwoCell]:
        return self.companion_counit, self.companion_unit, self.conjoint_counit, self.conjoint_unit


def companion_cells(f: VerticalSpan) -> tuple[TwoCell, TwoCell]:
    """The counit and unit squares exhibiting ``companion_cospan(f)`` as a companion."""
    a, c = f.top, f.bottom
    hat = companion_cospan(f)
    counit = TwoCell(
        hat,
        Cospan(f.down_leg, identity(c)),
        identity_cospan(c),
        inverse(f.down_leg),
        identity(c),
        f,
        identity_span(c),
    )
    unit = TwoCell(
        identity_cospan(a),
        Cospan(identity(a), f.up_leg),
        hat,
        identity(a),
        inverse(f.up_leg),
        identity_span(a),
        f,
    )
    return counit, unit


def companion_equations(f: VerticalSpan, counit: TwoCell, unit: TwoCell, budget: int = DEFAULT_SEARCH_BUDGET) -> tuple[bool, bool]:
    """Evaluate both companion equations for the given unit/counit squares.

    First: ``unit`` stacked on ``counit`` equals the unit square of ``f``.
    Second: ``unit`` beside ``counit``, conjugated by unitors, equals the
    identity cell on the companion.
    """
    hat = unit.bottom
    first = cells_equivalent(vertical_compose(unit, counit), unit_cell(f), budget=budget)
    side_by_side = horizontal_compose(unit, counit)
    conjugated = vertical_compose_all(flip_cell(left_unitor(hat)), side_by_side, right_unitor(hat))
    second = cells_equivalent(conjugated, identity_cell(hat), budget=budget)
    return first, second


def conjoint_equations(f: VerticalSpan, counit: TwoCell, unit: TwoCell, budget: int = DEFAULT_SEARCH_BUDGET) -> tuple[bool, bool]:
    """The companion equations read in the horizontally reversed double category."""
    check = unit.bottom
    first = cells_equivalent(vertical_compose(unit, counit), unit_cell(f), budget=budget)
    side_by_side = horizontal_compose(counit, unit)
    conjugated = vertical_compose_all(flip_cell(right_unitor(check)), side_by_side, left_unitor(check))
    second = cells_equivalent(conjugated, identity_cell(check), budget=budget)
    return first, second


def companion_conjoint(f: VerticalSpan, budget: int = DEFAULT_SEARCH_BUDGET) -> CompanionData:
    """Companion and conjoint of an invertible span, with their four squares.

    Both pairs of equations are checked before returning.
    """
    counit, unit = companion_cells(f)
    if not all(companion_equations(f, counit, unit, budget=budget)):
        raise InvariantError("companion equations fail")
    co_counit, co_unit = mirror_cell(counit), mirror_cell(unit)
    if not all(conjoint_equations(f, co_counit, co_unit, budget=budget)):
        raise InvariantError("conjoint equations fail")
    return CompanionData(counit.top, co_counit.top, counit, unit, co_counit, co_unit)


def side_spans_are_identities(c: TwoCell) -> bool:
    return all(is_identity(g) for g in (c.left.up_leg, c.left.down_leg, c.right.up_leg, c.right.down_leg))


__all__ = [
    "TwoCell",
    "CompanionData",
    "associator",
    "cells_equivalent",
    "cells_isomorphic",
    "check_cell",
    "companion_cells",
    "companion_conjoint",
    "companion_equations",
    "comparison_cell",
    "conjoint_equations",
    "flip_cell",
    "globular_interchanger",
    "horizontal_compose",
    "horizontal_compose_all",
    "identity_cell",
    "interchanger",
    "left_unitor",
    "mirror_cell",
    "rebase_sides",
    "right_unitor",
    "side_spans_are_identities",
    "structural_cell",
    "tensor_cells",
    "unit_cell",
    "unit_interchanger",
    "vertical_compose",
    "vertical_compose_all",
]
