import json

import hypothesis
import pytest

import random

from spancsp.cells import identity_cell
from spancsp.cospans import compose_cospans, identity_cospan
from spancsp.errors import DocumentInvariantError, MalformedDocumentError, SchemaError
from spancsp.gallery import extend, merge, relay_to_diamond_rule
from spancsp.generators import random_cell_below, random_cospan, random_graph, random_iso_span, random_morphism_from, random_rule
from spancsp.graph import Graph
from spancsp.serialize import Document, canonicalize, document_json, export_dot, kind_of, parse, serialize

from conftest import graphs, rngs


def _values(rng):
    g = random_graph(rng, 4, 5)
    top = random_cospan(rng, random_graph(rng, 2, 1), random_graph(rng, 2, 1))
    cell = random_cell_below(rng, top, random_iso_span(rng, top.left_foot), random_iso_span(rng, top.right_foot))
    return [g, random_morphism_from(rng, g), top, random_iso_span(rng, g), cell, random_rule(rng, 4, 5)]


@hypothesis.given(rngs())
def test_round_trip_is_canonical_and_stable(rng):
    for value in _values(rng):
        data = serialize(value)
        doc = parse(data)
        assert doc.kind == kind_of(value)
        assert doc.payload == canonicalize(value)
        assert serialize(doc) == data


@hypothesis.given(graphs())
def test_canonical_graphs_are_numbered_densely(g):
    c = canonicalize(g)
    assert c.nodes == set(range(len(g.nodes)))
    assert set(c.edges) == set(range(len(g.edges)))


def test_serialized_text_is_sorted_json():
    data = serialize(Graph.from_edges([5, 9], [(9, 5)]))
    assert data.endswith(b"\n")
    obj = json.loads(data)
    assert obj == {"format_version": 1, "kind": "graph", "payload": {"nodes": [0, 1], "edges": [{"id": 0, "src": 1, "tgt": 0}]}}


def test_malformed_json():
    with pytest.raises(MalformedDocumentError, match="line 1"):
        parse(b"{not json")
    with pytest.raises(MalformedDocumentError):
        parse(b"\xff\xfe")


def _doc(value):
    return document_json(Document.of(value))


def test_schema_errors_name_the_field():
    obj = _doc(merge())
    obj["payload"]["apex"]["edges"][1]["src"] = "zero"
    with pytest.raises(SchemaError, match=r"payload\.apex\.edges\[1\]\.src"):
        parse(json.dumps(obj))
    with pytest.raises(SchemaError, match="format_version"):
        parse(json.dumps({**_doc(merge()), "format_version": 2}))
    with pytest.raises(SchemaError, match="kind"):
        parse(json.dumps({**_doc(merge()), "kind": "hypergraph"}))
    with pytest.raises(SchemaError, match="payload"):
        parse(json.dumps({"format_version": 1, "kind": "graph"}))


def test_dangling_edge_end_is_a_schema_or_invariant_error():
    obj = _doc(Graph.from_edges([0, 1], [(0, 1)]))
    obj["payload"]["edges"][0]["tgt"] = 7
    with pytest.raises((SchemaError, DocumentInvariantError)):
        parse(json.dumps(obj))


def test_non_commuting_cell_is_an_invariant_error():
    obj = _doc(identity_cell(merge()))
    obj["payload"]["down"]["node_map"] = {"0": 1, "1": 0, "2": 2}
    obj["payload"]["down"]["edge_map"] = {"0": 1, "1": 0}
    with pytest.raises(DocumentInvariantError, match="square"):
        parse(json.dumps(obj))


def test_rule_documents_must_be_rules():
    obj = _doc(identity_cell(merge()))
    obj["kind"] = "rule"
    assert parse(json.dumps(obj)).kind == "rule"
    obj = _doc(identity_cell(merge()))
    bad_top = _doc(Graph.from_edges([0, 1], [(0, 1)]))["payload"]
    obj["payload"]["top"]["left_foot"] = bad_top
    with pytest.raises((SchemaError, DocumentInvariantError)):
        parse(json.dumps({**obj, "kind": "rule"}))


def test_dot_cospan_clusters():
    dot = export_dot(merge()).decode()
    assert dot.startswith("digraph")
    for name in ("input", "apex", "output"):
        assert f"subgraph cluster_c{name} {{" in dot
    assert 'ca2 [label="2", style=filled, fillcolor="lightsalmon"]' in dot
    assert "ci0 -> ca0 [style=dashed" in dot
    assert "palegreen" in dot and "lightsalmon" in dot
    assert "palegreen" not in export_dot(merge(), role_coloring=False).decode()


def test_dot_rule_has_three_rows():
    dot = export_dot(relay_to_diamond_rule()).decode()
    for row in ("top", "mid", "bottom"):
        assert f"subgraph cluster_{row} {{" in dot
        assert f"subgraph cluster_{row}apex {{" in dot
    assert "dotted" in dot


def test_dot_is_deterministic():
    assert export_dot(relay_to_diamond_rule()) == export_dot(relay_to_diamond_rule())


def test_empty_graph_document():
    assert serialize(Graph()) == b'{\n "format_version": 1,\n "kind": "graph",\n "payload": {\n  "edges": [],\n  "nodes": []\n }\n}\n'
    dot = export_dot(Graph()).decode()
    assert dot.startswith("digraph") and "label=" not in dot


def test_composite_dot_marks_inputs_and_output():
    dot = export_dot(compose_cospans(merge(), extend())).decode()
    inputs = dot[dot.index("cluster_cinput"):dot.index("cluster_capex")]
    outputs = dot[dot.index("cluster_coutput"):]
    assert inputs.count("[label=") == 2
    assert outputs.split("}")[0].count("[label=") == 1


def test_non_monic_up_leg_is_named():
    obj = _doc(identity_cell(identity_cospan(Graph([0, 1]))))
    obj["payload"]["up"]["node_map"] = {"0": 0, "1": 0}
    with pytest.raises(DocumentInvariantError, match="up leg"):
        parse(json.dumps(obj))


def test_unsupported_dot_kind():
    with pytest.raises((TypeError, ValueError)):
        export_dot(random_iso_span(random.Random(0), Graph([0])))
