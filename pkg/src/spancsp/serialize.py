"""JSON documents for graphs, morphisms, cospans, spans, cells and rules, plus DOT export.

Serialization is canonical: every graph is renumbered ``0..n-1`` in sorted
id order (nodes and edges separately), keys are sorted, and the text ends with
a newline. Parsing validates structure first (``SchemaError``) and then the
mathematical invariants (``DocumentInvariantError``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Union

from .cells import TwoCell
from .cospans import Cospan, VerticalSpan
from .errors import (
    DocumentInvariantError,
    MalformedDocumentError,
    MalformedGraphError,
    SchemaError,
)
from .graph import Graph, GraphMorphism
from .rewrite import OpenGraphRule

FORMAT_VERSION = 1
KINDS = ("graph", "morphism", "cospan", "vertical_span", "two_cell", "rule")

Value = Union[Graph, GraphMorphism, Cospan, VerticalSpan, TwoCell, OpenGraphRule]


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Value
    format_version: int = FORMAT_VERSION

    @classmethod
    def of(cls, value: Value) -> Document:
        """Wrap a value, inferring its kind."""
        return cls(kind_of(value), value)


def kind_of(value: Value) -> str:
    for kind, cls in (
        ("graph", Graph),
        ("morphism", GraphMorphism),
        ("cospan", Cospan),
        ("vertical_span", VerticalSpan),
        ("two_cell", TwoCell),
        ("rule", OpenGraphRule),
    ):
        if isinstance(value, cls):
            return kind
    raise TypeError(f"cannot serialize {type(value).__name__}")


# -- encoding --------------------------------------------------------------------


def _ranks(g: Graph) -> tuple[dict[int, int], dict[int, int]]:
    return (
        {n: i for i, n in enumerate(sorted(g.nodes))},
        {e: i for i, e in enumerate(sorted(g.edges))},
    )


def _graph_json(g: Graph) -> dict:
    nr, er = _ranks(g)
    return {
        "nodes": list(range(len(nr))),
        "edges": [{"id": er[e], "src": nr[s], "tgt": nr[t]} for e, s, t in g.edge_items()],
    }


def _maps_json(f: GraphMorphism) -> dict:
    dn, de = _ranks(f.dom)
    cn, ce = _ranks(f.cod)
    return {
        "node_map": {str(dn[a]): cn[b] for a, b in f.node_map.items()},
        "edge_map": {str(de[a]): ce[b] for a, b in f.edge_map.items()},
    }


def _cospan_json(c: Cospan) -> dict:
    return {
        "left_foot": _graph_json(c.left_foot),
        "right_foot": _graph_json(c.right_foot),
        "apex": _graph_json(c.apex),
        "left_leg": _maps_json(c.left_leg),
        "right_leg": _maps_json(c.right_leg),
    }


def _span_json(s: VerticalSpan) -> dict:
    return {
        "top": _graph_json(s.top),
        "mid": _graph_json(s.mid),
        "bottom": _graph_json(s.bottom),
        "up": _maps_json(s.up_leg),
        "down": _maps_json(s.down_leg),
    }


def _cell_json(c: TwoCell) -> dict:
    return {
        "top": _cospan_json(c.top),
        "mid": _cospan_json(c.mid),
        "bottom": _cospan_json(c.bottom),
        "up": _maps_json(c.up),
        "down": _maps_json(c.down),
        "left": _span_json(c.left),
        "right": _span_json(c.right),
    }


def to_json(value: Value) -> dict:
    kind = kind_of(value)
    if kind == "graph":
        return _graph_json(value)
    if kind == "morphism":
        return {"dom": _graph_json(value.dom), "cod": _graph_json(value.cod), **_maps_json(value)}
    if kind == "cospan":
        return _cospan_json(value)
    if kind == "vertical_span":
        return _span_json(value)
    if kind == "two_cell":
        return _cell_json(value)
    return _cell_json(value.cell)


def document_json(doc: Document) -> dict:
    if doc.kind != kind_of(doc.payload):
        raise TypeError(f"document kind {doc.kind!r} does not match its payload")
    return {"format_version": doc.format_version, "kind": doc.kind, "payload": to_json(doc.payload)}


def serialize(doc: Document | Value) -> bytes:
    if not isinstance(doc, Document):
        doc = Document.of(doc)
    text = json.dumps(document_json(doc), sort_keys=True, indent=1)
    return (text + "\n").encode("utf-8")


# -- decoding --------------------------------------------------------------------


def _need(obj: Any, key: str, path: str, typ: type | tuple = dict) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    if key not in obj:
        raise SchemaError(f"{path}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, typ) or isinstance(val, bool):
        names = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise SchemaError(f"{path}.{key}: expected {names}")
    return val


def _int(v: Any, path: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"{path}: expected an integer")
    return v


def _graph(obj: Any, path: str) -> Graph:
    nodes_raw = _need(obj, "nodes", path, list)
    nodes = [_int(n, f"{path}.nodes[{i}]") for i, n in enumerate(nodes_raw)]
    if len(set(nodes)) != len(nodes):
        raise SchemaError(f"{path}.nodes: duplicate node id")
    node_set = set(nodes)
    edges: dict[int, tuple[int, int]] = {}
    for i, e in enumerate(_need(obj, "edges", path, list)):
        ep = f"{path}.edges[{i}]"
        eid = _int(_need(e, "id", ep, int), f"{ep}.id")
        if eid in edges:
            raise SchemaError(f"{ep}.id: duplicate edge id {eid}")
        ends = []
        for end in ("src", "tgt"):
            n = _int(_need(e, end, ep, int), f"{ep}.{end}")
            if n not in node_set:
                raise SchemaError(f"{ep}.{end}: endpoint {n} is not a node")
            ends.append(n)
        edges[eid] = (ends[0], ends[1])
    return Graph(nodes, edges)


def _id_map(obj: Any, key: str, path: str, dom_ids, cod_ids) -> dict[int, int]:
    raw = _need(obj, key, path, dict)
    out = {}
    for k, v in raw.items():
        try:
            a = int(k)
        except ValueError:
            raise SchemaError(f"{path}.{key}: key {k!r} is not an integer") from None
        out[a] = _int(v, f"{path}.{key}[{k}]")
        if out[a] not in cod_ids:
            raise SchemaError(f"{path}.{key}[{k}]: {out[a]} is not in the codomain")
    if set(out) != set(dom_ids):
        raise SchemaError(f"{path}.{key}: keys must be exactly the domain ids")
    return out


def _morphism(obj: Any, path: str, dom: Graph, cod: Graph) -> GraphMorphism:
    nm = _id_map(obj, "node_map", path, dom.nodes, cod.nodes)
    em = _id_map(obj, "edge_map", path, dom.edges, cod.edges)
    try:
        return GraphMorphism(dom, cod, nm, em)
    except MalformedGraphError as exc:
        raise DocumentInvariantError(f"{path}: {exc}") from None


def _cospan(obj: Any, path: str) -> Cospan:
    lf = _graph(_need(obj, "left_foot", path), f"{path}.left_foot")
    rf = _graph(_need(obj, "right_foot", path), f"{path}.right_foot")
    apex = _graph(_need(obj, "apex", path), f"{path}.apex")
    left = _morphism(_need(obj, "left_leg", path), f"{path}.left_leg", lf, apex)
    right = _morphism(_need(obj, "right_leg", path), f"{path}.right_leg", rf, apex)
    return Cospan(left, right)


def _span(obj: Any, path: str) -> VerticalSpan:
    top = _graph(_need(obj, "top", path), f"{path}.top")
    mid = _graph(_need(obj, "mid", path), f"{path}.mid")
    bottom = _graph(_need(obj, "bottom", path), f"{path}.bottom")
    up = _morphism(_need(obj, "up", path), f"{path}.up", mid, top)
    down = _morphism(_need(obj, "down", path), f"{path}.down", mid, bottom)
    try:
        return VerticalSpan(up, down)
    except MalformedGraphError as exc:
        raise DocumentInvariantError(f"{path}: {exc}") from None


def _cell(obj: Any, path: str) -> TwoCell:
    top = _cospan(_need(obj, "top", path), f"{path}.top")
    mid = _cospan(_need(obj, "mid", path), f"{path}.mid")
    bottom = _cospan(_need(obj, "bottom", path), f"{path}.bottom")
    up = _morphism(_need(obj, "up", path), f"{path}.up", mid.apex, top.apex)
    down = _morphism(_need(obj, "down", path), f"{path}.down", mid.apex, bottom.apex)
    left = _span(_need(obj, "left", path), f"{path}.left")
    right = _span(_need(obj, "right", path), f"{path}.right")
    try:
        return TwoCell(top, mid, bottom, up, down, left, right)
    except MalformedGraphError as exc:
        raise DocumentInvariantError(f"{path}: {exc}") from None


def from_json(kind: str, obj: Any, path: str = "payload") -> Value:
    if kind == "graph":
        return _graph(obj, path)
    if kind == "morphism":
        dom = _graph(_need(obj, "dom", path), f"{path}.dom")
        cod = _graph(_need(obj, "cod", path), f"{path}.cod")
        return _morphism(obj, path, dom, cod)
    if kind == "cospan":
        return _cospan(obj, path)
    if kind == "vertical_span":
        return _span(obj, path)
    cell = _cell(obj, path)
    if kind == "two_cell":
        return cell
    try:
        return OpenGraphRule(cell)
    except MalformedGraphError as exc:
        raise DocumentInvariantError(f"{path}: {exc}") from None


def parse(data: bytes | str) -> Document:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocumentError(f"input is not UTF-8: {exc}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    version = _need(obj, "format_version", "document", int)
    if version != FORMAT_VERSION:
        raise SchemaError(f"document.format_version: unsupported version {version}")
    kind = _need(obj, "kind", "document", str)
    if kind not in KINDS:
        raise SchemaError(f"document.kind: unknown kind {kind!r}")
    if "payload" not in obj:
        raise SchemaError("document: missing field 'payload'")
    return Document(kind, from_json(kind, obj["payload"]), version)


def canonicalize(value: Value) -> Value:
    """The value every graph of which is renumbered ``0..n-1`` in sorted order."""
    kind = kind_of(value)
    return from_json(kind, to_json(value))


# -- DOT -------------------------------------------------------------------------

_INPUT_COLOR = "palegreen"
_OUTPUT_COLOR = "lightsalmon"
_BOTH_COLOR = "khaki"


def _dot_graph_body(g: Graph, prefix: str, colors: dict[int, str], indent: str) -> list[str]:
    lines = []
    for n in sorted(g.nodes):
        attrs = f'label="{n}"'
        if n in colors:
            attrs += f', style=filled, fillcolor="{colors[n]}"'
        lines.append(f"{indent}{prefix}{n} [{attrs}];")
    for e, s, t in g.edge_items():
        lines.append(f'{indent}{prefix}{s} -> {prefix}{t} [label="e{e}"];')
    return lines


def _role_colors(c: Cospan) -> dict[int, str]:
    ins = set(c.left_leg.node_map.values())
    outs = set(c.right_leg.node_map.values())
    colors = {}
    for n in ins | outs:
        colors[n] = _BOTH_COLOR if n in ins and n in outs else (_INPUT_COLOR if n in ins else _OUTPUT_COLOR)
    return colors


def _dot_cospan(c: Cospan, prefix: str, label: str, role_coloring: bool, indent: str) -> list[str]:
    inner = indent + "  "
    lines = [f"{indent}subgraph cluster_{prefix} {{", f'{inner}label="{label}";']
    lines += [f"{inner}subgraph cluster_{prefix}input {{", f'{inner}  label="input";']
    lines += _dot_graph_body(c.left_foot, f"{prefix}i", {}, inner + "  ")
    lines += [f"{inner}}}", f"{inner}subgraph cluster_{prefix}apex {{", f'{inner}  label="apex";']
    lines += _dot_graph_body(c.apex, f"{prefix}a", _role_colors(c) if role_coloring else {}, inner + "  ")
    lines += [f"{inner}}}", f"{inner}subgraph cluster_{prefix}output {{", f'{inner}  label="output";']
    lines += _dot_graph_body(c.right_foot, f"{prefix}o", {}, inner + "  ")
    lines.append(f"{inner}}}")
    for a, b in sorted(c.left_leg.node_map.items()):
        lines.append(f"{inner}{prefix}i{a} -> {prefix}a{b} [style=dashed, arrowhead=open];")
    for a, b in sorted(c.right_leg.node_map.items()):
        lines.append(f"{inner}{prefix}o{a} -> {prefix}a{b} [style=dashed, arrowhead=open];")
    lines.append(f"{indent}}}")
    return lines


def export_dot(doc: Document | Value, role_coloring: bool = True) -> bytes:
    """Render a graph, cospan, cell or rule as a DOT digraph.

    Cospans become clusters ``input``/``apex``/``output`` with dashed arrows
    for the legs; cells and rules stack their rows as clusters
    ``top``/``mid``/``bottom`` joined by the dotted inner legs.
    """
    if not isinstance(doc, Document):
        doc = Document.of(doc)
    value = doc.payload
    lines = ["digraph G {", "  rankdir=LR;", "  compound=true;"]
    if doc.kind == "graph":
        lines += _dot_graph_body(value, "n", {}, "  ")
    elif doc.kind == "cospan":
        lines += _dot_cospan(value, "c", "open graph", role_coloring, "  ")
    elif doc.kind in ("two_cell", "rule"):
        cell = value if doc.kind == "two_cell" else value.cell
        for name, row in (("top", cell.top), ("mid", cell.mid), ("bottom", cell.bottom)):
            lines += _dot_cospan(row, name, name, role_coloring, "  ")
        for name, leg in (("top", cell.up), ("bottom", cell.down)):
            for a, b in sorted(leg.node_map.items()):
                lines.append(f"  mida{a} -> {name}a{b} [style=dotted, arrowhead=none, constraint=false];")
    else:
        raise ValueError(f"cannot export a {doc.kind} document to DOT")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
