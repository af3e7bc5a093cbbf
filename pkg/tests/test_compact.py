import hypothesis
import pytest

from spancsp.compact import (
    counit_cospan,
    cusp_cell,
    dual_pair,
    fold_square,
    snake_holds,
    unit_cospan,
    verify_fold_pushout,
    zigzag,
)
from spancsp.cospans import Cospan, compose_cospan_chain, identity_cospan, tensor_cospans
from spancsp.generators import small_graphs
from spancsp.graph import EMPTY, Graph, compose_morphisms, identity
from spancsp.isomorphism import find_commuting_isomorphism
from spancsp.limits import associator_iso, coproduct, from_initial, pushout

from conftest import graphs


def test_counit_and_unit_shapes(edge):
    e, c = counit_cospan(edge), unit_cospan(edge)
    assert e.left_foot == coproduct(edge, edge).object and e.right_foot == EMPTY
    assert c.left_foot == EMPTY and c.right_foot == e.left_foot
    assert e.apex == edge == c.apex


def test_fold_square_commutes(loop):
    f, g, p, q = fold_square(loop)
    assert compose_morphisms(f, p) == compose_morphisms(g, q)


@pytest.mark.parametrize("x", list(small_graphs(2, 2)), ids=repr)
def test_fold_square_is_a_pushout_exhaustively(x):
    assert verify_fold_pushout(x)


@hypothesis.given(graphs())
def test_snake_holds(x):
    assert snake_holds(x)


@hypothesis.given(graphs(3, 3))
def test_cusps_are_invertible_globular_cells(x):
    data = dual_pair(x)
    for cell in (data.cusp_alpha, data.cusp_beta):
        assert cell.is_globular
        assert cell.bottom == identity_cospan(x)


def test_zigzag_feet(edge):
    for which in ("alpha", "beta"):
        z = zigzag(edge, which)
        assert z.left_foot == edge and z.right_foot == edge
        assert len(z.apex.nodes) == 2 and len(z.apex.edges) == 1


def test_unknown_zigzag():
    with pytest.raises(ValueError):
        zigzag(Graph([0]), "gamma")


def test_snake_fails_for_a_counit_that_does_not_glue(edge):
    # Same feet as the real counit, but the apex keeps both copies apart.
    xx = coproduct(edge, edge).object
    fake = Cospan(identity(xx), from_initial(xx))
    assert fake.left_foot == counit_cospan(edge).left_foot and fake.right_foot == EMPTY
    u = identity_cospan(edge)
    assoc = associator_iso(edge, edge, edge)
    chain = compose_cospan_chain(
        tensor_cospans(u, unit_cospan(edge)),
        Cospan(identity(assoc.cod), assoc),
        tensor_cospans(fake, u),
    )
    real = compose_cospan_chain(
        tensor_cospans(u, unit_cospan(edge)),
        Cospan(identity(assoc.cod), assoc),
        tensor_cospans(counit_cospan(edge), u),
    )
    assert len(real.apex.nodes) == 2
    assert len(chain.apex.nodes) > 2


def test_empty_graph_is_self_dual():
    assert snake_holds(EMPTY)
    assert verify_fold_pushout(EMPTY)
    assert cusp_cell(EMPTY).top.apex == EMPTY


def test_fold_square_objects_agree_with_pushout(edge):
    f, g, p, q = fold_square(edge)
    po = pushout(f, g)
    assert find_commuting_isomorphism(po.object, edge, incoming=[(po.left_inclusion, p), (po.right_inclusion, q)]) is not None
