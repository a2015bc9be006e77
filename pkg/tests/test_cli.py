import csv
import io
import json
import subprocess
import sys

import pytest

from weilpoly.cli import (
    EXIT_BUDGET,
    EXIT_DISCREPANCY,
    EXIT_NONMEMBER,
    EXIT_NOT_PRIME_POWER,
    EXIT_OK,
    EXIT_PRECISION,
    EXIT_SELFTEST,
    EXIT_USAGE,
    main,
)
from weilpoly.weil import WeilCandidate, expand


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def jsonl(out):
    return [json.loads(line) for line in out.splitlines() if line]


# enumerate -------------------------------------------------------------------------------


def test_enumerate_g1(capsys):
    code, out, err = run(capsys, "enumerate", "--q", "2", "--g", "1")
    assert code == EXIT_OK
    recs = jsonl(out)
    assert [r["a"] for r in recs] == [[-2], [-1], [0], [1], [2]]
    assert "count=5" in err
    for r in recs:
        assert r["coeffs"] == list(expand(WeilCandidate(2, 1, r["a"])))
        assert (r["class"] != "none") == r["real_root"]


def test_enumerate_real_roots_filter(capsys):
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--g", "2", "--filter", "real-roots")
    assert code == EXIT_OK
    recs = jsonl(out)
    assert [r["a"] for r in recs] == [[0, -4]]
    assert recs[0]["class"].startswith("x2-q-factor")


def test_enumerate_csv(capsys):
    code, out, err = run(capsys, "enumerate", "--q", "4", "--g", "2", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["q", "g", "a1", "a2", "a3", "a4", "a5", "real_root", "class"]
    body = rows[1:]
    assert len(body) == 101 and "count=101" in err
    assert ["4", "2", "-4", "10", "", "", "", "false", "none"] in body
    assert sum(r[7] == "true" for r in body) == 17


def test_enumerate_out_file(tmp_path, capsys):
    path = tmp_path / "w.jsonl"
    code, out, _ = run(capsys, "enumerate", "--q", "3", "--g", "2", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert len(jsonl(path.read_text())) == 63


def test_enumerate_jobs_byte_identical(capsys):
    _, one, _ = run(capsys, "enumerate", "--q", "3", "--g", "3")
    _, many, _ = run(capsys, "enumerate", "--q", "3", "--g", "3", "--jobs", "3")
    _, again, _ = run(capsys, "enumerate", "--q", "3", "--g", "3")
    assert one == many == again


def test_enumerate_safe_mode_identical(capsys):
    _, theorem, _ = run(capsys, "enumerate", "--q", "4", "--g", "2")
    _, safe, _ = run(capsys, "enumerate", "--q", "4", "--g", "2", "--mode", "safe")
    assert theorem == safe


def test_jsonl_round_trip_through_check(capsys):
    _, out, _ = run(capsys, "enumerate", "--q", "4", "--g", "2")
    for rec in jsonl(out)[::7]:
        a = ",".join(map(str, rec["a"]))
        code, out2, _ = run(capsys, "check", "--q", "4", "--g", "2", "--a", a)
        back = json.loads(out2)
        assert code == EXIT_OK and back["member"]
        assert (back["real_root"], back["class"]) == (rec["real_root"], rec["class"])


# check and classify ---------------------------------------------------------------------------


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", "--q", "4", "--g", "2", "--a", "-4,10")
    rec = json.loads(out)
    assert code == EXIT_OK and rec["member"] and rec["real_root"] is False
    code, out, _ = run(capsys, "check", "--q", "2", "--g", "1", "--a", "3")
    assert code == EXIT_NONMEMBER and json.loads(out)["member"] is False
    code, out, _ = run(capsys, "check", "--q", "2", "--g", "5", "--a", "0,-4,0,4,0")
    rec = json.loads(out)
    assert code == EXIT_OK and rec["real_root"] and rec["class"].startswith("x2-q-factor")


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--q", "9", "--g", "3", "--a", "-18,135,-540")
    rec = json.loads(out)
    assert code == EXIT_OK
    assert (rec["kind"], rec["k"], rec["l"], rec["cofactor"]) == ("sqrt-factors", 0, 3, [])
    code, _, _ = run(capsys, "classify", "--q", "2", "--g", "1", "--a", "3")
    assert code == EXIT_NONMEMBER


# errors ------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--q", "2"],
        ["enumerate", "--q", "2", "--g", "6"],
        ["check", "--q", "2", "--g", "2", "--a", "1"],
        ["check", "--q", "2", "--g", "2", "--a", "1,x"],
        ["enumerate", "--q", "2", "--g", "1", "--jobs", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_not_prime_power(capsys):
    assert run(capsys, "enumerate", "--q", "6", "--g", "1")[0] == EXIT_NOT_PRIME_POWER
    assert run(capsys, "check", "--q", "12", "--g", "1", "--a", "0")[0] == EXIT_NOT_PRIME_POWER


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("WEILPOLY_PREC", "not-a-number")
    assert run(capsys, "enumerate", "--q", "2", "--g", "1")[0] == EXIT_USAGE
    monkeypatch.setenv("WEILPOLY_PREC", "24")
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--g", "3", "--prec-cap", "32")
    assert code == EXIT_OK and len(jsonl(out)) == 215


# crosscheck -------------------------------------------------------------------------------


def test_crosscheck_clean(capsys):
    code, out, _ = run(capsys, "crosscheck", "--q", "2", "--g", "3")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["ok"] and rep["missing"] == rep["spurious"] == []


def test_crosscheck_paper_literal(capsys):
    code, out, _ = run(capsys, "crosscheck", "--q", "2", "--g", "2", "--paper-literal")
    rep = json.loads(out)
    assert code == EXIT_DISCREPANCY
    assert rep["missing"] or rep["spurious"]


def test_crosscheck_budget(capsys):
    code, _, _ = run(capsys, "crosscheck", "--q", "2", "--g", "3", "--budget", "5")
    assert code == EXIT_BUDGET


def test_crosscheck_sample(capsys):
    code, out, _ = run(capsys, "crosscheck", "--q", "2", "--g", "3", "--sample", "500", "--seed", "3")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["samples"] == 500 and rep["disagreements"] == []


# selftest -------------------------------------------------------------------------------------


def test_selftest_passes(capsys):
    code, _, err = run(capsys, "selftest")
    assert code == EXIT_OK, err


def test_selftest_names_the_injected_fault(capsys):
    code, _, err = run(capsys, "selftest", "--inject-fault", "unsorted-theta")
    assert code == EXIT_SELFTEST
    assert "FAILED: theta-sorting" in err


def test_selftest_low_precision_never_wrong(capsys):
    code, _, err = run(capsys, "selftest", "--prec", "8", "--prec-cap", "16")
    assert code in (EXIT_OK, EXIT_PRECISION), err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weilpoly", "check", "--q", "4", "--g", "2", "--a", "-4,10"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["member"] is True
