import hypothesis
import pytest

from spancsp.compact import fold_square
from spancsp.errors import BudgetExceeded, CompositionError
from spancsp.generators import (
    random_mono_from,
    random_mono_into,
    random_morphism_from,
    random_morphism_into,
    small_graphs,
)
from spancsp.graph import (
    EMPTY,
    Graph,
    GraphMorphism,
    classify_morphism,
    compose_morphisms,
    identity,
    inclusion,
)
from spancsp.isomorphism import find_commuting_isomorphism
from spancsp.limits import (
    codiagonal,
    coproduct,
    coproduct_object,
    from_initial,
    pair,
    pullback,
    pushout,
    subobject_classifier,
    swap_iso,
    verify_universal_property,
)

from conftest import graphs, rngs


def test_coproduct_keeps_left_ids_and_shifts_right(edge):
    co = coproduct(edge, edge)
    assert co.object == Graph([0, 1, 2, 3], {0: (0, 1), 1: (2, 3)})
    assert dict(co.right_inclusion.node_map) == {0: 2, 1: 3}


def test_coproduct_units_are_exact(edge):
    assert coproduct(edge, EMPTY).object == edge
    assert coproduct(EMPTY, edge).object == edge
    assert coproduct(edge, EMPTY).right_inclusion == from_initial(edge)


def test_one_plus_one():
    assert coproduct(Graph([0]), Graph([0])).object == Graph([0, 1])


@hypothesis.given(graphs(3, 3), graphs(3, 3), graphs(3, 3))
def test_coproduct_associative_with_inclusions(a, b, c):
    left = coproduct(coproduct(a, b).object, c)
    right_inner = coproduct(b, c)
    right = coproduct(a, right_inner.object)
    ab = coproduct(a, b)
    incoming = [
        (compose_morphisms(ab.left_inclusion, left.left_inclusion), right.left_inclusion),
        (compose_morphisms(ab.right_inclusion, left.left_inclusion),
         compose_morphisms(right_inner.left_inclusion, right.right_inclusion)),
        (left.right_inclusion, compose_morphisms(right_inner.right_inclusion, right.right_inclusion)),
    ]
    assert find_commuting_isomorphism(left.object, right.object, incoming) is not None


def test_gluing_two_open_graphs_along_a_node():
    # a=0, b=1, c=2 with a->c, b->c; then c=2, d=3 with c->d
    first = Graph.from_edges([0, 1, 2], [(0, 2), (1, 2)])
    second = Graph.from_edges([2, 3], [(2, 3)])
    foot = Graph([2])
    po = pushout(inclusion(foot, first), inclusion(foot, second))
    expected = Graph.from_edges([0, 1, 2, 3], [(0, 2), (1, 2), (2, 3)])
    assert len(po.object.nodes) == 4 and len(po.object.edges) == 3
    theta = find_commuting_isomorphism(
        po.object, expected,
        incoming=[(po.left_inclusion, inclusion(first, expected))],
    )
    assert theta is not None


@hypothesis.given(graphs(), rngs())
def test_pushout_along_identity(a, rng):
    g = random_morphism_from(rng, a)
    po = pushout(identity(a), g)
    assert find_commuting_isomorphism(g.cod, po.object, incoming=[(identity(g.cod), po.right_inclusion)]) is not None


def test_fold_square_pushout_object_is_x():
    x = Graph.from_edges([0, 1], [(0, 1)])
    left, right, _, _ = fold_square(x)
    assert find_commuting_isomorphism(pushout(left, right).object, x) is not None


def test_codiagonal_restricts_to_identities(edge):
    co = coproduct(edge, edge)
    nabla = codiagonal(edge)
    assert compose_morphisms(co.left_inclusion, nabla) == identity(edge)
    assert compose_morphisms(co.right_inclusion, nabla) == identity(edge)
    assert codiagonal(EMPTY) == identity(EMPTY)


def test_pushout_domain_mismatch(edge):
    with pytest.raises(CompositionError):
        pushout(identity(edge), identity(Graph([0])))


@hypothesis.given(graphs(), rngs())
def test_pushout_commutes_and_is_universal(a, rng):
    f, g = random_morphism_from(rng, a), random_morphism_from(rng, a)
    po = pushout(f, g)
    assert compose_morphisms(f, po.left_inclusion) == compose_morphisms(g, po.right_inclusion)
    assert verify_universal_property("pushout", (f, g, po.left_inclusion, po.right_inclusion))


@hypothesis.given(graphs(3, 4), rngs())
def test_pushout_verifier_detects_non_iso_comparisons(a, rng):
    f, g = random_morphism_from(rng, a), random_morphism_from(rng, a)
    po = pushout(f, g)
    h = random_morphism_from(rng, po.object)
    square = (f, g, compose_morphisms(po.left_inclusion, h), compose_morphisms(po.right_inclusion, h))
    assert verify_universal_property("pushout", square) == classify_morphism(h).iso


def test_extra_disconnected_node_is_not_a_pushout(edge):
    po = pushout(identity(edge), identity(edge))
    bigger = Graph(set(po.object.nodes) | {99}, {e: po.object.ends(e) for e in po.object.edges})
    inc = inclusion(po.object, bigger)
    square = (identity(edge), identity(edge), compose_morphisms(po.left_inclusion, inc), compose_morphisms(po.right_inclusion, inc))
    assert not verify_universal_property("pushout", square)


def test_non_commuting_square_is_rejected():
    two = Graph([0, 1])
    swap = GraphMorphism(two, two, {0: 1, 1: 0}, {})
    assert not verify_universal_property("pushout", (identity(two), swap, identity(two), identity(two)))


def test_verifier_budget(edge):
    big = Graph.from_edges(range(6), [(i, (i + 1) % 6) for i in range(6)])
    po = pushout(from_initial(big), from_initial(big))
    with pytest.raises(BudgetExceeded):
        verify_universal_property("pushout", (from_initial(big), from_initial(big), po.left_inclusion, po.right_inclusion), cap=5)


def test_subobject_classifier_shape():
    omega = subobject_classifier()
    assert len(omega.nodes) == 2 and len(omega.edges) == 5


@hypothesis.given(graphs(), rngs())
def test_pullback_along_identity(b, rng):
    f = random_morphism_from(rng, b)
    pb = pullback(identity(f.cod), f)
    assert find_commuting_isomorphism(pb.object, b, outgoing=[(pb.right_projection, identity(b))]) is not None


def test_pullback_of_two_subgraphs_is_their_intersection():
    g = Graph.from_edges([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)])
    s1 = g.subgraph({0, 1, 2}, {0, 1})
    s2 = g.subgraph({1, 2, 3}, {1, 2})
    pb = pullback(inclusion(s1, g), inclusion(s2, g))
    image = {pb.left_projection.node_map[n] for n in pb.object.nodes}
    assert image == {1, 2}
    assert {pb.left_projection.edge_map[e] for e in pb.object.edges} == {1}


@hypothesis.given(graphs(), rngs())
def test_pullback_commutes_and_is_universal(d, rng):
    f = random_morphism_into(rng, d, 4, 5)
    g = random_morphism_into(rng, d, 4, 5)
    pb = pullback(f, g)
    assert compose_morphisms(pb.left_projection, f) == compose_morphisms(pb.right_projection, g)
    assert verify_universal_property("pullback", (f, g, pb.left_projection, pb.right_projection))


@hypothesis.given(graphs(3, 4), rngs())
def test_pullback_verifier_detects_non_iso_comparisons(d, rng):
    f = random_morphism_into(rng, d, 3, 4)
    g = random_morphism_into(rng, d, 3, 4)
    pb = pullback(f, g)
    h = random_morphism_into(rng, pb.object, 3, 4)
    square = (f, g, compose_morphisms(h, pb.left_projection), compose_morphisms(h, pb.right_projection))
    assert verify_universal_property("pullback", square) == classify_morphism(h).iso


@hypothesis.given(graphs(), rngs())
def test_pair_mediates(d, rng):
    f = random_morphism_into(rng, d, 3, 4)
    g = random_morphism_into(rng, d, 3, 4)
    pb = pullback(f, g)
    h = random_morphism_into(rng, pb.object, 3, 4)
    m = pair(pb, compose_morphisms(h, pb.left_projection), compose_morphisms(h, pb.right_projection))
    assert m == h


@hypothesis.given(graphs(), rngs())
def test_pushout_of_monic_is_monic(a, rng):
    po = pushout(random_mono_from(rng, a), random_morphism_from(rng, a))
    assert classify_morphism(po.right_inclusion).mono


@hypothesis.given(graphs(), rngs())
def test_pullback_of_monic_is_monic(d, rng):
    pb = pullback(random_morphism_into(rng, d, 4, 5), random_mono_into(rng, d))
    assert classify_morphism(pb.left_projection).mono


@hypothesis.given(graphs(), rngs())
def test_constructions_are_deterministic(a, rng):
    f, g = random_morphism_from(rng, a), random_morphism_from(rng, a)
    assert pushout(f, g) == pushout(f, g)
    assert pullback(f, f) == pullback(f, f)


@hypothesis.given(graphs(3, 3), graphs(3, 3))
def test_swap_is_an_involutive_iso(a, b):
    s = swap_iso(a, b)
    assert classify_morphism(s).iso
    assert compose_morphisms(s, swap_iso(b, a)) == identity(coproduct(a, b).object)


def test_coproduct_object_is_left_nested(edge):
    assert coproduct_object(edge, edge, edge) == coproduct(coproduct(edge, edge).object, edge).object


PROBES = list(small_graphs(2, 2))


@hypothesis.settings(max_examples=25)
@hypothesis.given(graphs(2, 2), rngs())
def test_default_pushout_probe_agrees_with_many_probes(a, rng):
    f, g = random_morphism_from(rng, a), random_morphism_from(rng, a)
    po = pushout(f, g)
    h = random_morphism_from(rng, po.object, 1, 1)
    square = (f, g, compose_morphisms(po.left_inclusion, h), compose_morphisms(po.right_inclusion, h))
    assert verify_universal_property("pushout", square) == verify_universal_property("pushout", square, probes=PROBES)


@hypothesis.settings(max_examples=25)
@hypothesis.given(graphs(2, 2), rngs())
def test_default_pullback_probes_agree_with_many_probes(d, rng):
    f, g = random_morphism_into(rng, d, 2, 2), random_morphism_into(rng, d, 2, 2)
    pb = pullback(f, g)
    h = random_morphism_into(rng, pb.object, 2, 2)
    square = (f, g, compose_morphisms(h, pb.left_projection), compose_morphisms(h, pb.right_projection))
    assert verify_universal_property("pullback", square) == verify_universal_property("pullback", square, probes=PROBES)
