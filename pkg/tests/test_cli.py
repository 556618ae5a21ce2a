import json

import pytest

from algcomb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.lstrip().startswith("{") else out)


def test_spectra_petersen(capsys):
    code, rep = run(capsys, "spectra", "--graph", "petersen")
    assert code == 0 and rep["ok"]
    assert rep["result"]["eigenvalues"] == [3, 1, 1, 1, 1, 1, -2, -2, -2, -2]
    assert rep["command"] == "spectra" and rep["seed"] == 0 and "version" in rep


def test_verify_r33(capsys):
    code, rep = run(capsys, "ramsey", "verify-r33")
    assert code == 0
    assert rep["result"]["k6_all_fail"] is True and rep["result"]["k5_witness"]["N"] == 5


def test_setfam_check(tmp_path, capsys):
    path = tmp_path / "family.json"
    path.write_text(json.dumps({"ground": 4, "sets": [[1, 2, 3], [4]]}))
    code, rep = run(capsys, "setfam", "check", "--kind", "oddtown", "--in", str(path))
    assert code == 0 and rep["result"]["bound"] == 4
    code, rep = run(capsys, "setfam", "check", "--kind", "oddtown", "--in", '{"ground": 3, "sets": [[1, 2]]}')
    assert code == 1 and rep["result"]["witness"]


def test_setfam_bound_and_max(capsys):
    code, rep = run(capsys, "setfam", "max", "--kind", "oddtown", "--m", "4")
    assert code == 0 and rep["result"]["max_size"] == 4
    code, rep = run(capsys, "setfam", "max", "--kind", "oddtown", "--m", "7")
    assert code == 2 and rep["error_kind"] == "guard"
    code, rep = run(capsys, "setfam", "bound", "--kind", "L_fischer_modp", "--L", "0,1", "--p", "3", "--m", "5")
    assert code == 0 and rep["result"]["bound"] == 16


def test_guard_flag(capsys):
    code, rep = run(capsys, "ramsey", "sample", "--n", "13", "--trials", "1")
    assert code == 2 and rep["error_kind"] == "guard"
    code, rep = run(capsys, "ramsey", "sample", "--n", "4", "--guard", "bogus=3")
    assert code == 2 and "unknown guard" in rep["error"]
    code, rep = run(capsys, "ramsey", "sample", "--n", "4", "--guard", "max_n=3")
    assert code == 2 and rep["error_kind"] == "guard"
    code, rep = run(capsys, "ramsey", "sample", "--n", "4", "--trials", "50", "--guard", "max_n=4")
    assert code == 0 and rep["result"]["analytic_bound"] == "31/32"


def test_usage_errors(capsys):
    assert main(["nosuch"]) == 2
    assert main(["ramsey"]) == 2
    capsys.readouterr()
    code, rep = run(capsys, "geomx", "radon", "--in", "{not json")
    assert code == 2 and "invalid JSON" in rep["error"]
    code, rep = run(capsys, "geomx", "radon", "--in", "/nonexistent/file.json")
    assert code == 2
    code, rep = run(capsys, "geomx", "radon", "--in", '{"d": 2, "points": [[0, 0], [1, 0]]}')
    assert code == 2 and rep["error_kind"] == "input"
    code, rep = run(capsys, "spectra", "--graph", "kneser:5")
    assert code == 2


def test_deterministic_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert main(["ramsey", "sample", "--n", "5", "--trials", "40", "--seed", "7", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["seed"] == 7


def test_graph_inputs(tmp_path, capsys):
    edges = tmp_path / "c5.txt"
    edges.write_text("# five-cycle\n0 1\n1 2\n2 3\n3 4\n4 0\n")
    code, rep = run(capsys, "specgraph", "chromatic", "--in", str(edges))
    assert code == 0 and rep["result"]["chromatic_number"] == 3
    code, rep = run(capsys, "specgraph", "hoffman", "--graph", "kneser:5,2")
    assert code == 0 and rep["result"]["alpha"] == 4
    code, rep = run(capsys, "specgraph", "maxcut", "--in", '{"n": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]}')
    assert code == 0 and rep["result"]["maxcut"] == 4
    code, rep = run(capsys, "specgraph", "isomorphic", "--graph", "petersen", "--other", "kneser:5,2")
    assert rep["result"]["isomorphic"]


def test_ffpoly_commands(capsys):
    poly = {"p": 3, "n": 2, "terms": [{"e": [2, 0], "c": 1}, {"e": [0, 0], "c": 2}]}
    code, rep = run(capsys, "ffpoly", "roots", "--in", json.dumps(poly))
    assert code == 0 and rep["result"]["count"] == 6
    code, rep = run(capsys, "ffpoly", "kakeya-min", "--p", "3", "--n", "2")
    assert code == 0 and rep["result"]["min_size"] >= 6
    pts = {"p": 3, "n": 2, "points": [[x, y] for x in range(3) for y in range(3)]}
    code, rep = run(capsys, "ffpoly", "kakeya", "--in", json.dumps(pts))
    assert rep["result"]["is_kakeya"]


def test_nullsatz_commands(capsys):
    code, rep = run(capsys, "nullsatz", "egz", "--in", '{"moduli": [3], "elements": [[1],[1],[1],[2],[2]]}')
    assert code == 0 and len(rep["result"]["indices"]) == 3
    code, rep = run(capsys, "nullsatz", "davenport", "--moduli", "3,3")
    assert rep["result"]["davenport"] == 5
    code, rep = run(capsys, "nullsatz", "berge-sauer", "--random", "6", "--seed", "3")
    assert code == 0 and rep["result"]["edges"]
    cert_in = {
        "poly": {"p": 3, "n": 1, "terms": [{"e": [2], "c": 1}, {"e": [1], "c": 2}]},
        "grid": {"p": 3, "sets": [[0, 1]]},
    }
    code, rep = run(capsys, "nullsatz", "certificate", "--in", json.dumps(cert_in))
    assert code == 0 and rep["result"]["certificate"]["quotients"]


def test_geomx_commands(capsys):
    code, rep = run(capsys, "geomx", "radon", "--in", '{"d": 2, "points": [[0,0],[2,0],[0,2],["1/2","1/2"]]}')
    assert code == 0 and rep["result"]["J"]
    code, rep = run(capsys, "geomx", "joints", "--grid", "2")
    assert rep["result"]["joints"] == 8
    code, rep = run(capsys, "geomx", "two-distance", "--example", "4")
    assert rep["result"]["is_two_distance"]
    code, rep = run(capsys, "geomx", "centerpoint", "--in", "[[0,0],[1,0],[2,0],[0,1],[1,1],[2,1],[0,2],[1,2],[2,2]]")
    assert code == 0 and rep["result"]["point"] == [1, 1]
    code, rep = run(capsys, "geomx", "tverberg", "--r", "3", "--in", "[[0,0],[4,0],[0,4],[4,4],[1,2],[2,1],[3,3]]")
    assert code == 0 and len(rep["result"]["parts"]) == 3


def test_text_format(capsys):
    code, out = run(capsys, "ramsey", "bound", "--m", "3", "--n", "4", "--format", "text")
    assert code == 0 and "recurrence_bound: 10" in out and out.startswith("command: ramsey bound")


@pytest.mark.parametrize("name", ["setfam", "ffpoly", "ramsey"])
def test_suite_quick(capsys, name):
    code, rep = run(capsys, "suite", name)
    assert code == 0 and rep["result"]["failures"] == []
