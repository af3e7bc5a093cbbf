"""Self-duality of every graph: counit, unit, the fold pushout and the cusp cells."""
from __future__ import annotations

from typing import NamedTuple

from .cells import TwoCell, cells_equivalent, comparison_cell, flip_cell, identity_cell, vertical_compose
from .cospans import (
    Cospan,
    compose_cospan_chain,
    cospans_isomorphic,
    identity_cospan,
    tensor_cospans,
)
from .errors import InvariantError
from .graph import EMPTY, Graph, GraphMorphism, compose_morphisms, identity, inverse
from .isomorphism import DEFAULT_SEARCH_BUDGET
from .limits import (
    DEFAULT_VERIFY_CAP,
    associator_iso,
    codiagonal,
    copair,
    coproduct,
    coproduct_morphisms,
    from_initial,
    verify_universal_property,
)


def counit_cospan(x: Graph) -> Cospan:
    """``X + X -> X <- 0`` with the fold as left leg."""
    return Cospan(codiagonal(x), from_initial(x))


def unit_cospan(x: Graph) -> Cospan:
    """``0 -> X <- X + X`` with the fold as right leg."""
    return Cospan(from_initial(x), codiagonal(x))


def fold_square(x: Graph) -> tuple[GraphMorphism, GraphMorphism, GraphMorphism, GraphMorphism]:
    """``(fold + X, X + fold, fold, fold)`` with shared domain ``(X + X) + X``."""
    nabla = codiagonal(x)
    ix = identity(x)
    left = coproduct_morphisms(nabla, ix)
    right = compose_morphisms(associator_iso(x, x, x), coproduct_morphisms(ix, nabla))
    return left, right, nabla, nabla


def verify_fold_pushout(x: Graph, cap: int = DEFAULT_VERIFY_CAP) -> bool:
    """Check that the fold square is a pushout, and the middle-copy identities behind it.

    Including ``X`` into the middle summand of ``X + X + X`` and then applying
    ``fold + X`` (resp. ``X + fold``) must give the left (resp. right)
    inclusion ``X -> X + X``.
    """
    left, right, nabla, _ = fold_square(x)
    if not verify_universal_property("pushout", (left, right, nabla, nabla), cap=cap):
        return False
    xx = coproduct(x, x)
    xxx = coproduct(xx.object, x)
    middle = compose_morphisms(xx.right_inclusion, xxx.left_inclusion)
    return (
        compose_morphisms(middle, left) == xx.left_inclusion
        and compose_morphisms(middle, right) == xx.right_inclusion
    )


def _iso_cospan(f: GraphMorphism) -> Cospan:
    """Companion of the invertible span ``dom f <- dom f -> cod f``."""
    return Cospan(identity(f.dom), inverse(f))


def _unitors(x: Graph) -> tuple[GraphMorphism, GraphMorphism]:
    """``X + 0 -> X`` and ``0 + X -> X``."""
    right = copair(coproduct(x, EMPTY), identity(x), from_initial(x))
    left = copair(coproduct(EMPTY, x), from_initial(x), identity(x))
    return right, left


def zigzag(x: Graph, which: str = "alpha") -> Cospan:
    """The snake composite whose comparison with the identity cospan is a cusp.

    ``alpha``: ``X ~ X+0 -> (U + c) -> assoc -> (e + U) -> 0+X ~ X``, i.e.
    ``X -l-> X+X <-X+fold- X+X+X -fold+X-> X+X <-r- X``.
    ``beta`` is the mirrored composite through ``c + U`` and ``U + e``.
    """
    e, c, u = counit_cospan(x), unit_cospan(x), identity_cospan(x)
    rho, lam = _unitors(x)
    assoc = associator_iso(x, x, x)
    if which == "alpha":
        chain = (
            _iso_cospan(inverse(rho)),
            tensor_cospans(u, c),
            _iso_cospan(inverse(assoc)),
            tensor_cospans(e, u),
            _iso_cospan(lam),
        )
    elif which == "beta":
        chain = (
            _iso_cospan(inverse(lam)),
            tensor_cospans(c, u),
            _iso_cospan(assoc),
            tensor_cospans(u, e),
            _iso_cospan(rho),
        )
    else:
        raise ValueError(f"unknown zigzag {which!r}")
    return compose_cospan_chain(*chain)


def cusp_cell(x: Graph, which: str = "alpha", budget: int = DEFAULT_SEARCH_BUDGET) -> TwoCell:
    z = zigzag(x, which)
    theta = cospans_isomorphic(z, identity_cospan(x), budget=budget)
    if theta is None:
        raise InvariantError(f"{which} zigzag is not isomorphic to the identity cospan")
    cell = comparison_cell(z, identity_cospan(x), theta)
    inv = flip_cell(cell)
    if not cells_equivalent(vertical_compose(cell, inv), identity_cell(z), budget=budget):
        raise InvariantError(f"{which} cusp composed with its flip is not the identity")
    if not cells_equivalent(vertical_compose(inv, cell), identity_cell(identity_cospan(x)), budget=budget):
        raise InvariantError(f"flip composed with the {which} cusp is not the identity")
    return cell


class CuspCells(NamedTuple):
    alpha: TwoCell
    beta: TwoCell


def cusp_cells(x: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> CuspCells:
    return CuspCells(cusp_cell(x, "alpha", budget), cusp_cell(x, "beta", budget))


class DualPairData(NamedTuple):
    """``X`` as its own dual. ``cusp_beta`` is the constructed cusp, not a coherent replacement."""

    object: Graph
    counit: Cospan
    unit: Cospan
    cusp_alpha: TwoCell
    cusp_beta: TwoCell


def dual_pair(x: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> DualPairData:
    cusps = cusp_cells(x, budget)
    return DualPairData(x, counit_cospan(x), unit_cospan(x), cusps.alpha, cusps.beta)


def snake_holds(x: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Both zigzag composites are isomorphic to the identity cospan on ``x``."""
    u = identity_cospan(x)
    return all(cospans_isomorphic(zigzag(x, w), u, budget=budget) is not None for w in ("alpha", "beta"))
