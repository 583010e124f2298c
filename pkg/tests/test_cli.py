import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from eqgenus import cli, surfaces as sf

DATA = Path(sf.__file__).parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    kn = tmp_path / "k2.theta"
    kn.write_text(sf.theta_dumps(sf.kn_theta(2)))
    bands = tmp_path / "k2.bands"
    bands.write_text(sf.dumps(sf.hiura_construct(sf.kn_theta(2))))
    bad = tmp_path / "bad.bands"
    bad.write_text("BANDS v1 count=1 reflector=0,1\n1: twists=0 lk=0 attach=2,3/4,5\n")
    custom = tmp_path / "custom.json"
    custom.write_text(json.dumps({"schema_version": 1, "knot": "24/41", "quotient": "12/41",
                                  "surface": "k2.bands"}))
    return {"theta": str(kn), "bands": str(bands), "bad": str(bad), "custom": str(custom)}


@pytest.mark.parametrize("argv, expected", [
    (["cf", "eval", "[2,4]"], "4/7"),
    (["cf", "even", "4/17"], "[4,-4]"),
    (["cf", "minlen", "1/3"], "1\n[3]"),
    (["cf", "htcheck", "[4,2,4,2]"], "true"),
    (["cf", "htcheck", "[2,2]"], "false (inconclusive)"),
    (["twobridge", "genus", "24/41"], "2"),
    (["twobridge", "band", "12/41"], "4"),
    (["twobridge", "equiv", "4/7", "2/7"], "true"),
    (["twobridge", "equiv", "1/5", "2/5"], "false"),
    (["diagram", "genus", "--braid", "2: 1,1,1"], "genus 1 (circles 2, crossings 3, betti 2)"),
    (["equiv", "count", "hyperbolic_2bridge"], "4"),
])
def test_text_output(argv, expected):
    code, out, _ = run(*argv)
    assert code == 0
    assert out.strip() == expected


def test_diagram_plat_shifted():
    code, out, _ = run("diagram", "genus", "--braid", "4: 2,2,1,1,1,1", "--plat", "shifted")
    assert code == 0 and out.startswith("genus 1")


def test_equiv_table():
    code, out, _ = run("equiv", "table", "--family", "kn", "--max", "3")
    assert code == 0
    rows = [ln.split() for ln in out.strip().splitlines()[1:]]
    assert [(int(r[0]), int(r[1]), int(r[4]), int(r[5])) for r in rows] == [
        (n, n, 2 * n, n) for n in (1, 2, 3)]


def test_equiv_table_deterministic_across_threads():
    outs = {run("equiv", "table", "--family", "kn", "--max", "5", "--threads", str(t))[1] for t in (1, 2, 4)}
    outs |= {run("--threads", "3", "equiv", "table", "--family", "kn", "--max", "5")[1]}
    assert len(outs) == 1


def test_surface_commands(files):
    code, out, _ = run("surface", "hiura", files["theta"])
    assert code == 0
    assert sf.loads(out) == sf.hiura_construct(sf.kn_theta(2))
    code, out, _ = run("surface", "check", files["bands"])
    assert code == 0 and "condition C true" in out
    code, out, _ = run("surface", "lift", files["bands"])
    assert code == 0 and "lift genus 4" in out
    code, out, _ = run("surface", "hiura", str(DATA / "eight_three.theta"))
    assert code == 0 and out.startswith("BANDS v1 count=2")


def test_hiura_output_round_trips_through_lift(files, tmp_path):
    _, out, _ = run("surface", "hiura", files["theta"])
    p = tmp_path / "out.bands"
    p.write_text(out)
    code, out, _ = run("surface", "lift", str(p), "--json")
    assert json.loads(out)["lift_genus"] == 4


def test_equiv_report(files):
    code, out, _ = run("equiv", "report", "--family", "kn", "--n", "4")
    assert code == 0
    assert "usual genus  4" in out and "eq upper     8" in out and "gap          4" in out
    code, out, _ = run("equiv", "report", "--family", "eight_three")
    assert code == 0 and "exact        false" in out and "Kakimizu" in out
    code, out, _ = run("equiv", "report", "--file", files["custom"], "--json")
    d = json.loads(out)
    assert (d["usual_genus"], d["eq_lower"], d["eq_upper"], d["exact"], d["gap"]) == (2, 4, 4, True, 2)


def test_json_outputs_match_schemas(files):
    cases = [
        ["cf", "eval", "[2,4]"],
        ["cf", "even", "4/7"],
        ["cf", "minlen", "2/7"],
        ["cf", "htcheck", "[2,2]"],
        ["twobridge", "genus", "4/7"],
        ["twobridge", "band", "2/7"],
        ["twobridge", "equiv", "4/7", "2/7"],
        ["diagram", "genus", "--braid", "2: 1,1,1"],
        ["diagram", "genus", "--braid", "4: 2,2,1,1,1,1", "--plat", "shifted"],
        ["surface", "check", files["bands"]],
        ["surface", "lift", files["bands"]],
        ["surface", "hiura", files["theta"]],
        ["equiv", "report", "--family", "kn", "--n", "2"],
        ["equiv", "report", "--family", "eight_three"],
        ["equiv", "count", "torus"],
        ["equiv", "table", "--family", "kn", "--max", "2"],
    ]
    seen = set()
    for argv in cases:
        code, out, _ = run(*argv, "--json")
        assert code == 0, argv
        d = json.loads(out)
        jsonschema.validate(d, cli.SCHEMAS[d["command"]])
        assert json.loads(json.dumps(d)) == d
        seen.add(d["command"])
    assert seen == set(cli.SCHEMAS)


def test_top_level_json_flag():
    code, out, _ = run("--json", "cf", "eval", "[2,4]")
    assert json.loads(out)["fraction"] == "4/7"


@pytest.mark.parametrize("argv, code_name", [
    (["cf", "eval", "[1,1]"], "DivisionByZeroInTail"),
    (["cf", "even", "1/2"], "NotAKnotSlope"),
    (["cf", "minlen", "0/1"], None),
    (["diagram", "genus", "--braid", "2: 1,1"], "MultiComponent"),
    (["equiv", "report", "--family", "kn", "--n", "0"], "NonPositiveN"),
    (["equiv", "table", "--family", "kn", "--max", "0"], "NonPositiveN"),
])
def test_domain_errors(argv, code_name):
    code, out, err = run(*argv)
    if code_name is None:
        assert code == 0 and out.strip() == "0"
        return
    assert code == 1
    assert f"error[{code_name}]" in err


def test_domain_error_from_file(files):
    code, _, err = run("surface", "lift", files["bad"])
    assert code == 1 and "error[MultiBoundary]" in err


@pytest.mark.parametrize("argv, flag", [
    (["cf", "eval", "2,4"], "expansion"),
    (["cf", "even", "x"], "fraction"),
    (["diagram", "genus"], "--braid"),
    (["diagram", "genus", "--braid", "2: 3"], "--braid"),
    (["equiv", "table", "--family", "kn"], "--max"),
    (["equiv", "table", "--family", "torus", "--max", "2"], "--family"),
    (["equiv", "count", "satellite"], "class"),
    (["equiv", "table", "--family", "kn", "--max", "2", "--threads", "0"], "--threads"),
    (["surface", "lift", "/nonexistent/file"], "cannot read"),
    (["equiv", "report"], "--family"),
    (["equiv", "report", "--family", "kn"], "--n"),
    (["bogus"], "invalid choice"),
    ([], "required"),
])
def test_usage_errors(argv, flag, capsys):
    code, _, err = run(*argv)
    assert code == 2
    assert flag in err + capsys.readouterr().err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "eqgenus", "cf", "eval", "[2,4,2,4]"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "24/41"
    r = subprocess.run([sys.executable, "-m", "eqgenus", "cf", "eval", "[1,1]"],
                       capture_output=True, text=True)
    assert r.returncode == 1
    r = subprocess.run([sys.executable, "-m", "eqgenus", "cf", "nope"], capture_output=True, text=True)
    assert r.returncode == 2
