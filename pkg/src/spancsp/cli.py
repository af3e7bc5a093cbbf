"""Command-line interface.

Exit codes: 0 success, 1 law violation or failed rewrite condition,
2 malformed input, 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .cells import TwoCell, horizontal_compose, tensor_cells, vertical_compose
from .cospans import Cospan, align_cospans, compose_cospans, tensor_cospans
from .errors import BudgetExceeded, CompositionError, DocumentError, MalformedGraphError, RewriteError
from .graph import Graph
from .isomorphism import DEFAULT_SEARCH_BUDGET
from .lawcheck import DEFAULT_MAX_EDGES, DEFAULT_MAX_NODES, LAWS, check_law, reports_json
from .limits import coproduct
from .rewrite import OpenGraphRule, apply_rule, dualize_rule, find_matches, invert_rule
from .serialize import Document, document_json, export_dot, parse, serialize

EXIT_OK, EXIT_FAILURE, EXIT_MALFORMED, EXIT_BUDGET = 0, 1, 2, 3
ENV_PREFIX = "SPANCSP_"


class UsageError(Exception):
    """Bad command-line input that is not a document problem."""


def _setting(value, name: str, default, convert=int):
    """A flag value, else the ``SPANCSP_<NAME>`` environment variable, else ``default``."""
    if value is not None:
        return value
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    try:
        return convert(raw)
    except ValueError:
        raise UsageError(f"environment variable {ENV_PREFIX}{name.upper()}={raw!r} is invalid") from None


def parse_seed_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive), ``"a"``, or a comma-separated list."""
    text = text.strip()
    if not text:
        return []
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot read seed range {text!r}; expected a..b") from None


def _read(path: str) -> Document:
    if path == "-":
        return parse(sys.stdin.buffer.read())
    try:
        with open(path, "rb") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _need_kind(doc: Document, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise UsageError(f"expected a {' or '.join(kinds)} document, got {doc.kind}")


def _rule_of(doc: Document) -> OpenGraphRule:
    _need_kind(doc, "rule", "two_cell")
    if doc.kind == "rule":
        return doc.payload
    try:
        return OpenGraphRule(doc.payload)
    except MalformedGraphError as exc:
        raise UsageError(f"cell is not a rule: {exc}") from None


# -- commands --------------------------------------------------------------------


def cmd_compose(args) -> int:
    a, b = _read(args.first), _read(args.second)
    if a.kind == "cospan" and b.kind == "cospan":
        second = align_cospans(a.payload, b.payload) if args.align else b.payload
        value = compose_cospans(a.payload, second)
    elif a.kind == "two_cell" and b.kind == "two_cell":
        value = vertical_compose(a.payload, b.payload) if args.vertical else horizontal_compose(a.payload, b.payload)
    else:
        raise UsageError("compose takes two cospans or two two_cells")
    _write(serialize(value), args.output)
    return EXIT_OK


def cmd_tensor(args) -> int:
    a, b = _read(args.first), _read(args.second)
    if a.kind != b.kind:
        raise UsageError("tensor takes two documents of the same kind")
    if a.kind == "graph":
        value: Graph | Cospan | TwoCell = coproduct(a.payload, b.payload).object
    elif a.kind == "cospan":
        value = tensor_cospans(a.payload, b.payload)
    elif a.kind == "two_cell":
        value = tensor_cells(a.payload, b.payload)
    else:
        raise UsageError("tensor takes graphs, cospans or two_cells")
    _write(serialize(value), args.output)
    return EXIT_OK


def cmd_rewrite(args) -> int:
    rule = _rule_of(_read(args.rule))
    host_doc = _read(args.host)
    _need_kind(host_doc, "cospan")
    host = host_doc.payload
    budget = _setting(args.budget, "budget", DEFAULT_SEARCH_BUDGET)
    matches = find_matches(rule, host, cap=budget, strict_boundary=args.strict_boundary)
    if args.all:
        results, failed = [], []
        for i, m in enumerate(matches):
            try:
                res = apply_rule(rule, host, m)
            except RewriteError as exc:
                failed.append({"match": i, "error": str(exc)})
                continue
            results.append({"match": i, "result": document_json(Document.of(res.result))})
        out = {"results": results, "skipped": failed}
        _write((json.dumps(out, sort_keys=True, indent=1) + "\n").encode(), args.output)
        return EXIT_OK
    if args.match is None:
        listing = [
            {"index": i, "node_map": {str(k): v for k, v in sorted(m.match.node_map.items())}}
            for i, m in enumerate(matches)
        ]
        _write((json.dumps({"matches": listing}, sort_keys=True, indent=1) + "\n").encode(), args.output)
        return EXIT_OK
    if not 0 <= args.match < len(matches):
        raise UsageError(f"match index {args.match} out of range; {len(matches)} match(es) found")
    res = apply_rule(rule, host, matches[args.match])
    _write(serialize(res.witness if args.witness else res.result), args.output)
    return EXIT_OK


def cmd_dualize(args) -> int:
    _write(serialize(dualize_rule(_rule_of(_read(args.rule)))), args.output)
    return EXIT_OK


def cmd_invert(args) -> int:
    _write(serialize(invert_rule(_rule_of(_read(args.rule)))), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    seeds_text = _setting(args.seeds, "seeds", "0..19", str)
    seeds = parse_seed_range(seeds_text)
    max_nodes = _setting(args.max_nodes, "max_nodes", DEFAULT_MAX_NODES)
    max_edges = _setting(args.max_edges, "max_edges", DEFAULT_MAX_EDGES)
    budget = _setting(args.budget, "budget", DEFAULT_SEARCH_BUDGET)
    laws = LAWS if args.law == "all" else (args.law,)
    reports = [check_law(law, seeds, budget, max_nodes, max_edges) for law in laws]
    for r in reports:
        print(r.summary(), file=sys.stderr)
    _write(reports_json(reports).encode(), args.output)
    if any(r.failures for r in reports):
        return EXIT_FAILURE
    if any(r.errors for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_export_dot(args) -> int:
    doc = _read(args.input)
    _need_kind(doc, "graph", "cospan", "two_cell", "rule")
    _write(export_dot(doc, role_coloring=not args.no_roles), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spancsp", description="Open graphs, their rewrites, and the laws they satisfy.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        return sp

    sp = add("compose", cmd_compose, "compose two cospans (or two cells) along a shared boundary")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--vertical", action="store_true", help="stack cells instead of placing them side by side")
    sp.add_argument("--align", action="store_true", help="rename the second cospan's left foot to match if isomorphic")

    sp = add("tensor", cmd_tensor, "disjoint union of two graphs, cospans or cells")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = add("rewrite", cmd_rewrite, "apply a rule to a host open graph")
    sp.add_argument("--rule", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--match", type=int, help="index of the match to use; omit to list matches")
    sp.add_argument("--all", action="store_true", help="apply at every match")
    sp.add_argument("--witness", action="store_true", help="print the witnessing cell instead of the result")
    sp.add_argument("--strict-boundary", action="store_true", help="only matches whose feet land on host feet")
    sp.add_argument("--budget", type=int)

    sp = add("dualize", cmd_dualize, "exchange a rule's inputs and outputs")
    sp.add_argument("rule")

    sp = add("invert", cmd_invert, "read a rule bottom to top")
    sp.add_argument("rule")

    sp = add("check", cmd_check, "run seeded law checks")
    sp.add_argument("--law", default="all", choices=("all",) + LAWS)
    sp.add_argument("--seeds", help="inclusive range a..b (env SPANCSP_SEEDS)")
    sp.add_argument("--max-nodes", type=int, help="env SPANCSP_MAX_NODES")
    sp.add_argument("--max-edges", type=int, help="env SPANCSP_MAX_EDGES")
    sp.add_argument("--budget", type=int, help="search step budget (env SPANCSP_BUDGET)")

    sp = add("export-dot", cmd_export_dot, "render a document as Graphviz DOT")
    sp.add_argument("input")
    sp.add_argument("--no-roles", action="store_true", help="do not colour input/output nodes")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except RewriteError as exc:
        print(f"rewrite failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (DocumentError, CompositionError, MalformedGraphError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
