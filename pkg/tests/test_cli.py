import json
import re
from fractions import Fraction as F

import pytest

from milefkit import cli
from milefkit.matching import (example_k3, example_k5, example_k7, matching_polytope_hrep, matchings_enum,
                               parity_milef)
from milefkit.milef import Milef
from milefkit.polyhedron import HPolyhedron, VPolytope, le, vertex_enum


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj, kind=None):
    path = tmp_path / name
    path.write_text(cli.dumps(obj, kind))
    return path


CORPUS = [
    matching_polytope_hrep(range(1, n + 1)) for n in range(0, 5)
] + [matchings_enum(range(1, 5)), VPolytope(2, [(F(1, 3), F(-2, 7)), (0, 5)]), VPolytope(3),
     parity_milef(3), example_k3(), example_k5(), example_k7(), HPolyhedron.empty(2)]


@pytest.mark.parametrize("obj", CORPUS, ids=lambda o: type(o).__name__)
def test_round_trip(obj):
    text = cli.dumps(obj)
    back = cli.loads(text)
    assert back == obj
    assert cli.dumps(back) == text


def test_rationals_are_never_decimals():
    text = cli.dumps(VPolytope(1, [(F(1, 3),), (F(5, 2),), (4,)]))
    assert not re.search(r"\d\.\d", text)
    assert json.loads(text)["payload"]["vertices"] == [["1/3"], ["5/2"], ["4"]]


def test_trace_round_trip(tmp_path, capsys):
    src = write(tmp_path, "k3.json", example_k3())
    run(capsys, "eliminate", src, "--w", "1,2,3", "--trace", tmp_path / "t.json", "-o", tmp_path / "o.json")
    text = (tmp_path / "t.json").read_text()
    payload = cli.loads(text)
    assert cli.dumps(payload, "trace") == text


@pytest.mark.parametrize("text", [
    "not json",
    '{"format_version": 2, "kind": "vpolytope", "payload": {"dim": 0, "vertices": []}}',
    '{"format_version": 1, "kind": "cone", "payload": {}}',
    '{"format_version": 1, "kind": "vpolytope", "payload": {"dim": 1, "vertices": [[0.5]]}}',
    '{"format_version": 1, "kind": "vpolytope", "payload": {"dim": 1, "vertices": [["1/0"]]}}',
    '{"format_version": 1, "kind": "hpolyhedron", "payload": {"dim": 1, "constraints": [{"a": ["1"], "rel": "<", "b": "0"}]}}',
    '{"format_version": 1, "kind": "milef", "payload": {"Q": {"dim": 1, "constraints": []}, "I": [3], "J": []}}',
    '{"format_version": 1, "kind": "milef", "payload": {"I": [], "J": []}}',
])
def test_parse_errors(text):
    with pytest.raises(cli.ParseError):
        cli.loads(text)


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "hull", bad)
    assert code == cli.EXIT_PARSE and "invalid JSON" in err
    code, _, _ = run(capsys, "hull", tmp_path / "missing.json")
    assert code == cli.EXIT_PARSE


def test_gen_matching(tmp_path, capsys):
    out = tmp_path / "m3.json"
    assert run(capsys, "gen", "matching", "--n", 3, "-o", out)[0] == 0
    P = cli.load(out)
    assert isinstance(P, HPolyhedron) and len(P.constraints) == 7
    assert run(capsys, "gen", "matching", "--n", -1)[0] != 0


def test_gen_parity_and_examples(capsys):
    code, out, _ = run(capsys, "gen", "parity", "--d", 3)
    M = cli.loads(out)
    assert code == 0 and (M.p, M.k) == (4, 1)
    assert run(capsys, "gen", "parity", "--d", 0)[0] != 0
    code, out, _ = run(capsys, "gen", "example-k3")
    assert cli.loads(out) == example_k3()


def test_gen_bad_kind_is_usage_error(capsys):
    code, _, err = run(capsys, "gen", "tsp")
    assert code == cli.EXIT_PARSE and "invalid choice" in err


def test_eliminate_k3(tmp_path, capsys):
    src = write(tmp_path, "k3.json", example_k3())
    code, out, _ = run(capsys, "eliminate", src, "--w", "1,2,3")
    assert code == 0
    trace = json.loads((tmp_path / "k3-trace.json").read_text())["payload"]
    step = trace["steps"][0]
    assert step["gamma"] == 1 and (step["k_before"], step["k_after"]) == (1, 0)
    assert step["verified"] is True
    M = cli.load(tmp_path / "k3-eliminated.json")
    assert isinstance(M, Milef) and M.k == 0
    assert "n_i" in out and "m_i" in out and "k_i" in out


def test_eliminate_bad_w(tmp_path, capsys):
    src = write(tmp_path, "k3.json", example_k3())
    code, _, err = run(capsys, "eliminate", src, "--w", "1,2")
    assert code == cli.EXIT_PRECONDITION and "no violated facet" in err


def test_eliminate_keep_redundant(tmp_path, capsys):
    src = write(tmp_path, "k5.json", example_k5())
    code, _, _ = run(capsys, "eliminate", src, "--w", "1,2,3", "--keep-redundant")
    assert code == 0
    step = json.loads((tmp_path / "k5-trace.json").read_text())["payload"]["steps"][0]
    assert step["m_after"] == (step["m_before"] + 1) * step["gamma"]
    assert step["m_reduced"] is None
    assert cli.load(tmp_path / "k5-eliminated.json").m == step["m_after"]


def test_eliminate_all_with_schedule(tmp_path, capsys):
    src = write(tmp_path, "k7.json", example_k7())
    sched = tmp_path / "sched.json"
    sched.write_text("[[1, 2, 3], [4, 5, 6]]")
    code, out, _ = run(capsys, "eliminate", src, "--all", "--schedule", sched, "--keep-redundant")
    assert code == 0
    trace = json.loads((tmp_path / "k7-trace.json").read_text())["payload"]
    assert [s["k_after"] for s in trace["steps"]] == [1, 0]
    assert [r["n"] for r in trace["table"]] == [7, 4, 1]
    assert run(capsys, "eliminate", src, "--all")[0] == cli.EXIT_PARSE


def test_verify(tmp_path, capsys):
    p3 = write(tmp_path, "p3.json", parity_milef(3))
    run(capsys, "gen", "even", "--d", 3, "-o", tmp_path / "even.json")
    run(capsys, "gen", "cube", "--d", 3, "-o", tmp_path / "cube.json")
    assert run(capsys, "verify", p3, tmp_path / "even.json")[0] == 0
    code, out, _ = run(capsys, "verify", p3, tmp_path / "cube.json")
    assert code == cli.EXIT_MISMATCH
    witness = json.loads(re.search(r"(\[.*?\])", out).group(1).replace("'", '"'))
    assert sum(int(x) for x in witness) % 2 == 1


def test_verify_unbounded(tmp_path, capsys):
    ray = write(tmp_path, "ray.json", Milef(HPolyhedron(1, (le([-1], 0),)), (0,), (0,)))
    tgt = write(tmp_path, "t.json", VPolytope(1, [(0,)]))
    code, _, err = run(capsys, "verify", ray, tgt)
    assert code == cli.EXIT_UNBOUNDED and "unbounded" in err


def test_project_square(tmp_path, capsys):
    sq = write(tmp_path, "square.json", HPolyhedron.box([0, 0], [1, 1]))
    code, out, _ = run(capsys, "project", sq, "--keep", "1")
    assert code == 0
    assert vertex_enum(cli.loads(out)).vertices == ((0,), (1,))
    assert run(capsys, "project", sq, "--keep", "5")[0] == cli.EXIT_PARSE


def test_hull_parity(tmp_path, capsys):
    p3 = write(tmp_path, "p3.json", parity_milef(3))
    code, out, _ = run(capsys, "hull", p3)
    assert code == 0 and len(cli.loads(out)) == 4


def test_flatdir_thin_slab(tmp_path, capsys):
    slab = write(tmp_path, "slab.json", HPolyhedron.box([0, F(1, 3)], [10, F(2, 3)]))
    code, out, _ = run(capsys, "flatdir", slab)
    res = json.loads(out)
    assert code == 0 and res["v"] == [0, 1] and res["integer_width"] == -1
    assert res["width_real"] == "1/3"


def test_flatdir_search_bound_env(tmp_path, capsys, monkeypatch):
    K = write(tmp_path, "k.json", VPolytope(2, [(0, 0), (2, -1), (F(1, 10), 0), (F(21, 10), -1)]))
    monkeypatch.setenv("MILEF_SEARCH_BOUND", "1")
    res = json.loads(run(capsys, "flatdir", K)[1])
    assert res["search_bound"] == 1 and max(map(abs, res["v"])) == 1
    res = json.loads(run(capsys, "flatdir", K, "--search-bound", 3)[1])
    assert res["v"] == [1, 2]


def test_latticefree(tmp_path, capsys):
    K = write(tmp_path, "k.json", HPolyhedron.box([F(-1, 2)], [F(3, 2)]))
    res = json.loads(run(capsys, "latticefree", K)[1])
    assert res["is_lattice_free"] is False and res["witness"] in ([0], [1])
    T = write(tmp_path, "t.json", VPolytope(2, [(0, 0), (1, 0), (0, 1)]))
    assert json.loads(run(capsys, "latticefree", T)[1])["is_lattice_free"] is True


def test_kind_mismatch_is_parse_error(tmp_path, capsys):
    P = write(tmp_path, "p.json", HPolyhedron.box([0], [1]))
    code, _, err = run(capsys, "hull", P)
    assert code == cli.EXIT_PARSE and "expected Milef" in err
