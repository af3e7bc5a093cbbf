import json
import subprocess
import sys

import pytest

from spancsp.cli import UsageError, main, parse_seed_range
from spancsp.cospans import cospans_isomorphic
from spancsp.gallery import diamond, extend, merge, relay, relay_to_diamond_rule
from spancsp.graph import Graph
from spancsp.rewrite import dualize_rule, invert_rule, open_graph
from spancsp.serialize import parse, serialize


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, value in (
        ("merge", merge()),
        ("extend", extend()),
        ("relay", relay()),
        ("rule", relay_to_diamond_rule()),
    ):
        path = tmp_path / f"{name}.json"
        path.write_bytes(serialize(value))
        out[name] = str(path)
    return out


def _run(argv, capsysbinary):
    code = main(argv)
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err.decode()


def test_seed_ranges():
    assert parse_seed_range("3..5") == [3, 4, 5]
    assert parse_seed_range("7") == [7]
    assert parse_seed_range("1,4") == [1, 4]
    assert parse_seed_range("") == []
    with pytest.raises(UsageError):
        parse_seed_range("a..b")


def test_compose(files, capsysbinary):
    code, out, _ = _run(["compose", files["merge"], files["extend"]], capsysbinary)
    assert code == 0
    doc = parse(out)
    assert doc.kind == "cospan" and len(doc.payload.apex.nodes) == 4


def test_compose_mismatched_feet_exits_2(files, capsysbinary):
    code, _, err = _run(["compose", files["extend"], files["merge"]], capsysbinary)
    assert code == 2 and "boundary" in err


def test_malformed_input_exits_2(tmp_path, capsysbinary):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = _run(["export-dot", str(bad)], capsysbinary)
    assert code == 2 and "line 1" in err


def test_rewrite_lists_then_applies(files, capsysbinary):
    code, out, _ = _run(["rewrite", "--rule", files["rule"], "--host", files["relay"]], capsysbinary)
    assert code == 0
    assert len(json.loads(out)["matches"]) == 1
    code, out, _ = _run(["rewrite", "--rule", files["rule"], "--host", files["relay"], "--match", "0"], capsysbinary)
    assert code == 0
    assert cospans_isomorphic(parse(out).payload, parse(serialize(diamond())).payload) is not None


def test_rewrite_witness_and_bad_index(files, capsysbinary):
    code, out, _ = _run(["rewrite", "--rule", files["rule"], "--host", files["relay"], "--match", "0", "--witness"], capsysbinary)
    assert code == 0 and parse(out).kind == "two_cell"
    code, _, err = _run(["rewrite", "--rule", files["rule"], "--host", files["relay"], "--match", "4"], capsysbinary)
    assert code == 2 and "out of range" in err


def test_rewrite_dangling_exits_1(tmp_path, files, capsysbinary):
    host = tmp_path / "host.json"
    host.write_bytes(serialize(open_graph(Graph.from_edges([0, 1, 2, 3], [(0, 1), (1, 2), (1, 3)]), [0], [2])))
    code, _, err = _run(["rewrite", "--rule", files["rule"], "--host", str(host), "--match", "0"], capsysbinary)
    assert code == 1 and "dangling" in err.lower()


def test_dualize_and_invert(files, capsysbinary, tmp_path):
    target = tmp_path / "dual.json"
    assert main(["dualize", files["rule"], "-o", str(target)]) == 0
    assert parse(target.read_bytes()).payload == parse(serialize(dualize_rule(relay_to_diamond_rule()))).payload
    code, out, _ = _run(["invert", files["rule"]], capsysbinary)
    assert code == 0
    assert parse(out).payload == parse(serialize(invert_rule(relay_to_diamond_rule()))).payload


def test_dualize_wrong_kind(files, capsysbinary):
    code, _, err = _run(["dualize", files["merge"]], capsysbinary)
    assert code == 2 and "expected a rule" in err


def test_check_reports_json(capsysbinary):
    code, out, err = _run(["check", "--law", "snake", "--seeds", "0..2"], capsysbinary)
    assert code == 0
    (report,) = json.loads(out)
    assert report["law"] == "snake" and report["trials"] == 3
    assert "snake: 3/3 passed" in err


def test_check_environment_fallback(monkeypatch, capsysbinary):
    monkeypatch.setenv("SPANCSP_SEEDS", "0..1")
    code, out, _ = _run(["check", "--law", "mono_preservation"], capsysbinary)
    assert code == 0 and json.loads(out)[0]["trials"] == 2
    code, out, _ = _run(["check", "--law", "mono_preservation", "--seeds", "0..4"], capsysbinary)
    assert json.loads(out)[0]["trials"] == 5


def test_check_bad_environment(monkeypatch, capsysbinary):
    monkeypatch.setenv("SPANCSP_MAX_NODES", "many")
    code, _, err = _run(["check", "--law", "snake", "--seeds", "0"], capsysbinary)
    assert code == 2 and "SPANCSP_MAX_NODES" in err


def test_check_budget_exit_code(capsysbinary):
    code, _, err = _run(["check", "--law", "interchange", "--seeds", "0..2", "--budget", "1"], capsysbinary)
    assert code == 3 and "over budget" in err


def test_export_dot(files, capsysbinary):
    code, out, _ = _run(["export-dot", files["rule"]], capsysbinary)
    assert code == 0 and out.startswith(b"digraph")


def test_tensor(files, capsysbinary):
    code, out, _ = _run(["tensor", files["merge"], files["extend"]], capsysbinary)
    assert code == 0
    assert len(parse(out).payload.apex.nodes) == 5


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "spancsp", "export-dot", files["merge"]], capture_output=True)
    assert proc.returncode == 0 and proc.stdout.startswith(b"digraph")
