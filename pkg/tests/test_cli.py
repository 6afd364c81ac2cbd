import json
import subprocess
import sys

import pytest

from toricvortex import cli

THREEFOLD = {"k": 2, "weights": [[1, 0], [1, 1], [0, 1], [0, 1], [0, 1]], "tau": [2, 4]}
TRIANGLE = {"k": 2, "weights": [[1, 0], [0, 1], [1, 1]], "tau": ["2", 1]}


@pytest.fixture
def problem(tmp_path):
    def write(data, name="p.json"):
        f = tmp_path / name
        f.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(f)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# commands


def test_analyze_text(problem, capsys):
    code, out, _ = run(capsys, "analyze", problem(THREEFOLD))
    assert code == 0
    assert "f-vector: (6, 9, 5, 1)" in out
    assert "betti numbers: (1, 2, 2, 1)" in out
    assert "minimal Chern number N = 2" in out


def test_analyze_json(problem, capsys):
    code, out, _ = run(capsys, "analyze", problem(THREEFOLD), "--json")
    report = json.loads(out)
    assert code == 0 and report["euler"] == 6
    assert sorted(report["chamber_fingerprint"]) == [[1, 3], [1, 4], [1, 5], [2, 3], [2, 4], [2, 5]]


def test_invariant_modes(problem, capsys):
    f = problem(TRIANGLE)
    for mode in ("direct", "wallcross", "checked"):
        code, out, _ = run(capsys, "invariant", f, "--lambda=1,0", "--ell=0,3,0", "--mode", mode)
        assert code == 0 and out.strip() == "-2"


def test_invariant_from_file_alpha(problem, capsys):
    data = dict(THREEFOLD, alpha=[["1/2", [1, 0, 1, 1, 0]], [3, [2, 0, 1, 0, 0]]])
    code, out, _ = run(capsys, "invariant", problem(data), "--json")
    assert code == 0 and json.loads(out)["value"] == "-5/2"


def test_wallcross_all_walls(problem, capsys):
    code, out, _ = run(capsys, "wallcross", problem(THREEFOLD), "--ell=1,0,1,1,0")
    assert code == 0
    assert out.count("[pass]") == 3


def test_wallcross_bad_index(problem, capsys):
    code, _, err = run(capsys, "wallcross", problem(THREEFOLD), "--ell=1,0,1,1,0", "--wall", "9")
    assert code == 2 and "--wall" in err


def test_cohomology(problem, capsys):
    code, out, _ = run(capsys, "cohomology", problem(THREEFOLD))
    assert code == 0
    assert out.splitlines()[:3] == ["u3 = u4 = u5 = u2 - u1", "u1*u2 = 0", "u3*u4*u5 = 0"]


def test_quantum(problem, capsys):
    f = problem(THREEFOLD)
    code, out, _ = run(capsys, "quantum", f)
    assert out.splitlines() == ["u3 = u4 = u5 = u2 - u1", "u1*u2 = q1", "u3*u4*u5 = u1*q2"]
    code, out, _ = run(capsys, "quantum", f, "--symbolic", "--verify", "7")
    assert code == 0
    assert out.splitlines() == ["u3 = u4 = u5 = u2 - u1", "u1*u2 = q^(1,0)",
                                "u3*u4*u5 = u1*q^(-1,1)", "verified: 7/7"]


def test_gw(problem, capsys):
    cp2 = {"k": 1, "weights": [[1], [1], [1]], "tau": [3]}
    code, out, _ = run(capsys, "gw", problem(cp2), "--lambda=1", "--ell=1,2,2")
    assert code == 0 and out.strip() == "1"


def test_rank1(capsys):
    code, out, _ = run(capsys, "rank1", "--weights=1,2", "--d", "1", "--g", "2")
    assert code == 0 and out.strip() == "9/2"
    code, out, _ = run(capsys, "rank1", "--weights=1,2", "--d", "1", "--tau=-1/2")
    assert out.strip() == "0"


# ---------------------------------------------------------------------------
# errors and exit codes


def test_malformed_json_reports_position(problem, capsys):
    code, _, err = run(capsys, "analyze", problem('{"k": 1,\n "weights": [[1]]\n "tau": [1]}'))
    assert code == 2
    assert ":3:" in err


def test_schema_violations(problem, capsys):
    assert run(capsys, "analyze", problem(dict(THREEFOLD, extra=1)))[0] == 2
    assert run(capsys, "analyze", problem(dict(THREEFOLD, tau=[2.5, 4])))[0] == 2
    assert run(capsys, "analyze", problem(dict(THREEFOLD, tau=[2])))[0] == 2
    assert run(capsys, "analyze", problem(dict(THREEFOLD, weights=[[1, 0], [1]])))[0] == 2
    assert run(capsys, "analyze", "/nonexistent.json")[0] == 2


def test_geometry_errors(problem, capsys):
    code, _, err = run(capsys, "analyze", problem(dict(THREEFOLD, tau=[1, 1])))
    assert code == 3 and "SingularParameter" in err
    code, _, err = run(capsys, "analyze", problem({"k": 1, "weights": [[1], [-1]], "tau": [1]}))
    assert code == 3 and "NotProper" in err


def test_rational_parsing():
    assert cli.parse_rational("3/4") == cli.parse_rational(" 3/4 ")
    with pytest.raises(cli.ParseError):
        cli.parse_rational(0.5)
    assert cli.fmt_rational(cli.parse_rational("-6/4")) == "-3/2"


# ---------------------------------------------------------------------------
# determinism and packaging


def test_output_is_deterministic(problem, capsys):
    f = problem(THREEFOLD)
    first = run(capsys, "quantum", f, "--verify", "10", "--json")
    second = run(capsys, "quantum", f, "--verify", "10", "--json")
    assert first == second
    assert json.loads(first[1])["verified"]["passed"] == 10


def test_module_entry_point(problem):
    proc = subprocess.run([sys.executable, "-m", "toricvortex", "rank1", "--weights=1,1,1", "--d=2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "1"
