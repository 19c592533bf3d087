import io
import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from hsdirac import cli
from hsdirac.report import VerificationReport


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    return code, out.getvalue()


def test_verify_algebra_json():
    code, text = run("verify-algebra", "--m-max", "3", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert list(doc) == ["suite", "entries", "summary"]
    assert doc["summary"]["fail"] == 0
    assert {e["params"]["m"] for e in doc["entries"]} == {0, 1, 2, 3}
    assert list(doc["entries"][0]) == ["check", "params", "status", "values", "provenance"]


def test_spectrum_rows():
    code, text = run("spectrum", "--m", "1", "--n-max", "4", "--operator", "d0")
    assert code == 0
    rows = [ev for e in json.loads(text)["entries"] for ev in e["values"]["eigenvalues"]]
    assert any(r["eigenvalue"] == "-3/2" and r["multiplicity"] == 2 for r in rows)


def test_kernel_dplus():
    code, text = run("kernel", "--operator", "dplus", "--m", "1")
    (entry,) = json.loads(text)["entries"]
    assert code == 0
    assert entry["values"]["dimension"] == 4 and entry["status"] == "pass"


def test_kernel_precondition_is_usage_error(capsys):
    code, _ = run("kernel", "--operator", "dplus", "--m", "3", "--n-max", "1")
    assert code == 2
    assert "degree 3" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["torus", "--m-max", "-1"],
    ["torus", "--m-max", "two"],
    ["torus", "--frobnicate"],
    ["spectrum", "--operator", "dplus"],
    ["kernel", "--operator", "dminus", "--m", "2"],
    [],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_unwritable_out(tmp_path):
    assert run("torus", "--out", str(tmp_path / "missing" / "r.json"))[0] == 2


def test_out_file(tmp_path):
    target = tmp_path / "r.json"
    code, text = run("torus", "--m-max", "2", "--out", str(target))
    assert code == 0 and text == ""
    assert json.loads(target.read_text())["summary"] == {"pass": 3, "fail": 0}


def test_csv_and_text_projections():
    code, text = run("verify-cg", "--m-max", "1", "--format", "csv")
    lines = text.strip().splitlines()
    assert lines[0] == "suite,check,params,status,values,provenance"
    assert len(lines) == 1 + 6
    code, text = run("verify-cg", "--m-max", "1", "--format", "text")
    assert text.splitlines()[-1] == "verify-cg: 6 pass, 0 fail"


def test_failing_suite_exits_1(monkeypatch):
    def broken(args):
        rep = VerificationReport("torus")
        rep.add("forced", False, {"m": 0}, witness={"why": "fixture"})
        return rep

    monkeypatch.setitem(cli.SUITES, "torus", broken)
    code, text = run("torus")
    doc = json.loads(text)
    assert code == 1
    assert doc["entries"][0]["witness"] == {"why": "fixture"}


@settings(max_examples=20)
@given(st.lists(st.booleans(), min_size=1, max_size=6))
def test_exit_code_contract(statuses):
    def fake(args):
        rep = VerificationReport("torus")
        for k, ok in enumerate(statuses):
            rep.add(f"forced.{k}", ok, {"k": k})
        return rep

    saved = cli.SUITES["torus"]
    cli.SUITES["torus"] = fake
    try:
        code, _ = run("torus")
    finally:
        cli.SUITES["torus"] = saved
    assert code == (0 if all(statuses) else 1)


def test_output_is_deterministic():
    argv = ["spectrum", "--m-max", "2", "--n-max", "2", "--operator", "all"]
    assert run(*argv)[1] == run(*argv)[1]


def test_timing_lives_in_envelope():
    _, plain = run("torus", "--m-max", "1")
    _, timed = run("torus", "--m-max", "1", "--timing")
    doc = json.loads(timed)
    assert len(doc["envelope"]["wall_time"]) == 2
    del doc["envelope"]
    assert doc == json.loads(plain)


def test_report_all_degenerate():
    code, text = run("report-all", "--m-max", "0", "--n-max", "1")
    doc = json.loads(text)
    assert code == 0
    assert [s["suite"] for s in doc["sections"]] == list(cli.SUITES)
    assert len(doc["sections"]) == 8


def test_cache_dir_from_environment(tmp_path):
    env = dict(os.environ, HSD_CACHE_DIR=str(tmp_path))
    res = subprocess.run([sys.executable, "-m", "hsdirac", "spectrum", "--m", "1", "--n-max", "1"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert (tmp_path / "d0_m1_n1.json").exists()
    again = subprocess.run([sys.executable, "-m", "hsdirac", "spectrum", "--m", "1", "--n-max", "1"],
                           capture_output=True, text=True, env=env)
    assert again.stdout == res.stdout
