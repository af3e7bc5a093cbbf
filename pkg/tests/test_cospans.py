import random

import hypothesis
import pytest

from spancsp.cospans import (
    Cospan,
    VerticalSpan,
    align_cospans,
    companion_cospan,
    compose_cospan_chain,
    compose_cospans,
    compose_spans,
    cospans_isomorphic,
    identity_cospan,
    identity_span,
    span_of_iso,
    spans_isomorphic,
    swap_structure,
    tensor_cospans,
)
from spancsp.errors import CompositionError, MalformedGraphError
from spancsp.gallery import extend, merge
from spancsp.generators import random_cospan, random_graph, random_iso, random_iso_span
from spancsp.graph import Graph, GraphMorphism, classify_morphism, identity, inverse
from spancsp.limits import swap_iso

from conftest import graphs, rngs


def _composable(rng, n):
    feet = [random_graph(rng, 2, 1) for _ in range(n + 1)]
    return [random_cospan(rng, feet[i], feet[i + 1]) for i in range(n)]


def test_merge_then_extend():
    c = compose_cospans(merge(), extend())
    assert c.left_foot == Graph([0, 1]) and c.right_foot == Graph([3])
    assert len(c.apex.nodes) == 4 and len(c.apex.edges) == 3


def test_composition_needs_equal_feet():
    with pytest.raises(CompositionError):
        compose_cospans(extend(), merge())


def test_align_renames_an_isomorphic_foot():
    m = identity_cospan(Graph([0]))
    n = identity_cospan(Graph([5]))
    with pytest.raises(CompositionError):
        compose_cospans(m, n)
    aligned = align_cospans(m, n)
    assert aligned.left_foot == m.right_foot
    glued = compose_cospans(m, aligned)
    assert len(glued.apex.nodes) == 1 and glued.right_foot == Graph([5])


def test_align_refuses_non_isomorphic_feet():
    with pytest.raises(CompositionError):
        align_cospans(identity_cospan(Graph([0])), identity_cospan(Graph([0, 1])))


def test_cospan_legs_must_share_apex(edge):
    with pytest.raises(MalformedGraphError):
        Cospan(identity(edge), identity(Graph([0])))


def test_vertical_span_legs_must_be_invertible():
    two = Graph([0, 1])
    collapse = GraphMorphism(two, Graph([0]), {0: 0, 1: 0}, {})
    with pytest.raises(MalformedGraphError):
        VerticalSpan(collapse, collapse)


@hypothesis.given(rngs())
def test_identity_cospans_are_exact_units(rng):
    (m,) = _composable(rng, 1)
    left = compose_cospans(identity_cospan(m.left_foot), m)
    right = compose_cospans(m, identity_cospan(m.right_foot))
    assert cospans_isomorphic(left, m) is not None
    assert cospans_isomorphic(right, m) is not None


@hypothesis.given(rngs())
def test_composition_is_associative_up_to_iso(rng):
    m, n, p = _composable(rng, 3)
    a = compose_cospans(compose_cospans(m, n), p)
    b = compose_cospans(m, compose_cospans(n, p))
    assert cospans_isomorphic(a, b) is not None
    assert compose_cospan_chain(m, n, p) == a


@hypothesis.given(rngs())
def test_tensor_interchanges_with_composition(rng):
    m1, m2 = _composable(rng, 2)
    n1, n2 = _composable(rng, 2)
    a = compose_cospans(tensor_cospans(m1, n1), tensor_cospans(m2, n2))
    b = tensor_cospans(compose_cospans(m1, m2), compose_cospans(n1, n2))
    assert cospans_isomorphic(a, b) is not None


@hypothesis.given(graphs(), rngs())
def test_span_composition_with_identity(x, rng):
    f = random_iso_span(rng, x)
    g = compose_spans(identity_span(f.top), f)
    assert spans_isomorphic(g, f) is not None


@hypothesis.given(graphs(), rngs())
def test_span_then_flip_is_identity(x, rng):
    f = random_iso_span(rng, x)
    assert spans_isomorphic(compose_spans(f, f.flipped()), identity_span(x)) is not None


@hypothesis.given(graphs(), rngs())
def test_span_of_iso_and_its_companion(x, rng):
    iso = random_iso(rng, x)
    f = span_of_iso(iso)
    hat = companion_cospan(f)
    assert hat.left_foot == x and hat.right_foot == iso.cod
    assert hat.apex == x
    assert hat.right_leg == inverse(iso)


def test_swap_structure(edge):
    pt = Graph([0])
    s = swap_structure(edge, pt)
    assert s.vertical.down_leg == swap_iso(edge, pt)
    assert s.horizontal == companion_cospan(s.vertical)
    assert s.horizontal.right_foot == s.vertical.bottom


def test_reversed_is_involutive():
    m = merge()
    assert m.reversed().reversed() == m
    assert m.reversed().left_foot == m.right_foot


def test_random_cospans_are_deterministic():
    a = _composable(random.Random(3), 2)
    b = _composable(random.Random(3), 2)
    assert a == b


def test_swap_blocks_are_exchanged():
    one, two = Graph([0]), Graph([0, 1])
    s = swap_structure(one, two)
    cls = classify_morphism(s.vertical.down_leg)
    assert cls.mono and cls.epi
    assert dict(s.vertical.down_leg.node_map) == {0: 2, 1: 0, 2: 1}


@hypothesis.given(graphs(3, 3), graphs(3, 3))
def test_swap_twice_is_identity(x, y):
    there = swap_structure(x, y).vertical
    back = swap_structure(y, x).vertical
    assert spans_isomorphic(compose_spans(there, back), identity_span(there.top)) is not None


def test_swap_with_empty_is_identity(edge):
    s = swap_structure(Graph(), edge)
    assert s.vertical.down_leg == identity(edge)
