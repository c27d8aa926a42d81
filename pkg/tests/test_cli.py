import json
from fractions import Fraction
import subprocess
import sys

import pytest

from latval.cli import EXIT_FAIL, EXIT_INCOMPATIBLE, EXIT_INVALID, EXIT_PARSE, main
from latval.polytope import Polytope, standard_simplex, unit_cube

T2 = standard_simplex(2)


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="p.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_compute_examples(capsys, write):
    t2 = write(T2.to_json())
    assert run(capsys, "compute", t2, "dst")[:2] == (0, {"dst": ["1/3", "1/3"]})
    sq = write(unit_cube(2).to_json(), "sq.json")
    assert run(capsys, "compute", sq, "ehrhart")[1] == {"L": ["1", "2", "1"]}
    code, doc, _ = run(capsys, "compute", t2, "projection-body")
    hexagon = Polytope([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])
    assert code == 0 and Polytope.from_json(doc["projection-body"]) == hexagon
    assert run(capsys, "compute", t2, "count")[1] == {"count": "3"}
    assert run(capsys, "compute", t2, "moment")[1] == {"moment": ["1", "1"]}


def test_compute_operators_round_trip(capsys, write):
    t2 = write(T2.to_json())
    code, doc, _ = run(capsys, "compute", t2, "z-ab", "--a", "1", "--b", "0")
    third = Polytope.from_json(doc["z-ab"])
    assert code == 0 and third == T2 + (Fraction(-1, 3), Fraction(-1, 3))
    code, doc, _ = run(capsys, "compute", t2, "contra-z-ab-2d", "--a", "1/2", "--b", "1/2")
    assert code == 0 and Polytope.from_json(doc["contra-z-ab-2d"]).dim == 2
    code, doc, _ = run(capsys, "compute", t2, "difference-body")
    hexagon = Polytope([(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)])
    assert Polytope.from_json(doc["difference-body"]) == hexagon
    assert run(capsys, "compute", t2, "centroid")[1] == {"centroid": ["1/3", "1/3"]}
    # l(kT_2) has first coordinate sum_i i (k - i + 1) = k(k+1)(k+2)/6
    ell = [["0", "0"], ["1/3", "1/3"], ["1/2", "1/2"], ["1/6", "1/6"]]
    assert run(capsys, "compute", t2, "moment-expansion")[1] == {"ell": ell}
    doc = run(capsys, "compute", t2, "facet-system")[1]["facet-system"]
    rows = {(tuple(r["normal"]), r["offset"]) for r in doc["inequalities"]}
    assert rows == {(("-1", "0"), "0"), (("0", "-1"), "0"), (("1", "1"), "1")}


def test_compute_from_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(unit_cube(3).to_json())))
    assert run(capsys, "compute", "-", "count")[:2] == (0, {"count": "8"})


def test_compute_errors(capsys, write):
    t2 = write(T2.to_json())
    assert run(capsys, "compute", write("{not json", "bad.json"), "count")[0] == EXIT_PARSE
    assert run(capsys, "compute", "/nonexistent/file.json", "count")[0] == EXIT_PARSE
    assert run(capsys, "compute", write({"dim": 2, "vertices": []}, "e.json"), "count")[0] \
        == EXIT_INVALID
    assert run(capsys, "compute", write({"dim": 3, "vertices": [["0", "0"]]}, "m.json"),
               "count")[0] == EXIT_INVALID
    assert run(capsys, "compute", write(unit_cube(3).to_json(), "c.json"), "contra-z-ab-2d",
               "--a", "1", "--b", "1")[0] == EXIT_INCOMPATIBLE
    assert run(capsys, "compute", t2, "z-ab", "--a", "1")[0] == EXIT_INCOMPATIBLE
    assert run(capsys, "compute", t2, "z-ab", "--a", "-1", "--b", "0")[0] == EXIT_INVALID
    assert run(capsys, "compute", t2, "z-ab", "--a", "x", "--b", "0")[0] == EXIT_PARSE
    assert run(capsys, "compute", t2, "volume-of-doom")[0] == EXIT_INCOMPATIBLE
    half = write({"dim": 2, "vertices": [["0", "0"], ["1/2", "0"], ["0", "1"]]}, "h.json")
    assert run(capsys, "compute", half, "ehrhart")[0] == EXIT_INVALID
    assert run(capsys, "compute", half, "count")[:2] == (0, {"count": "2"})
    with pytest.raises(SystemExit) as exc:
        main(["compute"])
    assert exc.value.code == EXIT_PARSE


def test_verify(capsys):
    code, doc, err = run(capsys, "verify", "--suite", "dst", "--dim", "2", "--seed", "7",
                         "--trials", "50")
    assert code == 0 and doc["passed"] and doc["seed"] == "7"
    assert "dst: PASS" in err
    code, doc, _ = run(capsys, "verify", "--suite", "negative-controls", "--trials", "10")
    assert code == EXIT_FAIL and not doc["passed"]
    assert all(r["failures"] for r in doc["reports"])
    assert run(capsys, "verify", "--suite", "dst,bogus")[0] == EXIT_INCOMPATIBLE
    assert run(capsys, "verify", "--suite", "dst", "--dim", "1")[0] == EXIT_INCOMPATIBLE


def test_verify_all_lists_every_suite(capsys):
    code, doc, _ = run(capsys, "verify", "--suite", "all", "--dim", "3", "--trials", "2")
    assert code == 0
    names = {r["suite"].split("[")[0].split(" ")[0] for r in doc["reports"]}
    assert {"valuation", "equivariance", "contravariance", "dst", "integrality", "expansion",
            "ehrhart", "minkowski", "decompositions"} <= names


def test_decomp(capsys):
    code, doc, _ = run(capsys, "decomp", "cube", "--dim", "3")
    assert code == 0 and len(doc["cells"]) == 6
    code, doc, _ = run(capsys, "decomp", "prism", "--dim", "3")
    assert len(doc["cells"]) == 3 and doc["adjacency"] == [[0, 1], [1, 2]]
    code, doc, _ = run(capsys, "decomp", "grid", "--dim", "2", "--k", "2")
    assert len(doc["cells"]) == 4 and doc["census"] == {"0": 1, "1": 4, "2": 4}
    code, doc, _ = run(capsys, "decomp", "corner", "--dim", "2")
    assert Polytope.from_json(doc["U"]) == unit_cube(2)
    for cell in run(capsys, "decomp", "cube", "--dim", "2")[1]["cells"]:
        P = Polytope.from_json(cell)
        assert Polytope.from_json(P.to_json()) == P
    assert run(capsys, "decomp", "sphere")[0] == EXIT_INCOMPATIBLE
    assert run(capsys, "decomp", "cube", "--dim", "1")[0] == EXIT_INCOMPATIBLE
    assert run(capsys, "decomp", "grid", "--k", "0")[0] == EXIT_INCOMPATIBLE


def test_json_path(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["decomp", "prism", "--dim", "2", "--json", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    assert len(json.loads(out.read_text())["cells"]) == 2


def test_module_entry_point(write):
    t2 = write(T2.to_json())
    proc = subprocess.run([sys.executable, "-m", "latval", "compute", t2, "dst"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"dst": ["1/3", "1/3"]}
