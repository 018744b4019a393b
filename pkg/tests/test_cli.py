import csv
import io
import json

import pytest

from babyverma.cli import main, parse_chi, parse_index_set, parse_vector
from babyverma.gf import field
from babyverma.rootsys import ConfigurationError, Root


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_a1(capsys):
    code, out, _ = run(capsys, "decide", "--type", "A1", "--p", "5", "--I", "", "--lambda", "4")
    assert code == 0
    assert "simple; factor (x1 + 1)^4 - 1 = -1" in out


def test_decide_steinberg_with_oracle(capsys):
    code, out, _ = run(capsys, "decide", "--type", "A2", "--p", "3", "--lambda", "2,2", "--oracle")
    assert code == 0
    assert "oracle: simple" in out and "27" in out


def test_decide_not_simple(capsys):
    code, out, _ = run(capsys, "decide", "--type", "A2", "--p", "3", "--lambda", "0,0")
    assert code == 0
    assert "not simple; 3 vanishing factors" in out


@pytest.mark.parametrize("argv", [
    ["decide", "--type", "G2", "--p", "3", "--lambda", "0,0"],
    ["decide", "--type", "A2", "--p", "3", "--I", "1,2", "--lambda", "0,0"],
    ["decide", "--type", "A2", "--p", "3", "--I", "1", "--chi-f", "a1+a2:1", "--lambda", "0,0"],
    ["decide", "--type", "A1", "--p", "3", "--chi-h", "1", "--lambda", "0"],
    ["decide", "--type", "E6", "--p", "5", "--lambda", "0"],
    ["decide", "--type", "A2", "--p", "4", "--lambda", "0,0"],
])
def test_hypothesis_violations_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_size_bound_exit_3(capsys):
    code, _, err = run(capsys, "decide", "--type", "G2", "--p", "7", "--lambda", "0,0", "--oracle")
    assert code == 3
    assert "bound" in err


def test_scan_a1(capsys):
    code, out, _ = run(capsys, "scan", "--type", "A1", "--p", "3", "--oracle")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    assert [r["lambda"] for r in rows if r["formula_verdict"] == "simple"] == ["2"]
    assert all(r["formula_verdict"] == r["oracle_verdict"] for r in rows)


def test_scan_a2_simple_set(capsys):
    code, out, _ = run(capsys, "scan", "--type", "A2", "--p", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    assert [r["lambda"] for r in rows if r["formula_verdict"] == "simple"] == ["2 2"]


def test_scan_empty_domain(capsys):
    code, out, err = run(capsys, "scan", "--type", "A1", "--p", "3", "--chi-h", "1")
    assert code == 0
    assert len(out.strip().splitlines()) == 1
    assert "warning" in err.lower()


def test_scan_deterministic_and_parallel(capsys):
    argv = ["scan", "--type", "B2", "--p", "3", "--I", "1", "--oracle"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    _, par, _ = run(capsys, *argv, "--jobs", "2")
    assert first == second == par


def test_scan_to_file(tmp_path, capsys):
    out = tmp_path / "a1.csv"
    assert main(["scan", "--type", "A1", "--p", "5", "--out", str(out)]) == 0
    assert len(out.read_text().strip().splitlines()) == 6


def test_verify_checks(capsys):
    code, out, _ = run(capsys, "verify", "--check", "lemma31", "--types", "A2,B2,G2", "--p", "3,5,7")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--check", "thm37", "--types", "A1,A2", "--p", "3")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--check", "prop21", "--ranks", "4")
    assert code == 0 and "PASS" in out
    code, _, _ = run(capsys, "verify", "--check", "nonsense")
    assert code == 2


def test_export(capsys):
    code, out, _ = run(capsys, "export", "factors", "--type", "A2", "--I", "1")
    doc = json.loads(out)
    assert code == 0 and len(doc["factors"]) == 2
    code, out, _ = run(capsys, "export", "rootsys", "--type", "G2")
    assert code == 0 and len(json.loads(out)["positive_roots"]) == 6
    code, out, _ = run(capsys, "export", "constants", "--type", "B2")
    assert code == 0 and out.startswith("alpha,beta,target,coefficient")
    code, out, _ = run(capsys, "export", "matrices", "--type", "A1", "--p", "3", "--lambda", "1")
    assert code == 0 and out.strip()


def test_parsers():
    assert parse_index_set("") == ()
    assert parse_index_set("{1, 2}") == (1, 2)
    with pytest.raises(ConfigurationError):
        parse_index_set("a")
    fld = field(3, 2)
    assert parse_vector(fld, "1:1,2", 2, "x") == (4, 2)
    with pytest.raises(ConfigurationError):
        parse_vector(fld, "1", 2, "x")
    chi = parse_chi(fld, 2, "0,1:1", "a1:1")
    assert chi.chi_h == (0, 4) and chi.f(Root((1, 0))) == 1
