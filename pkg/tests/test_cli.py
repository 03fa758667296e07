import io
import json
import subprocess
import sys

import pytest

from tauforge.cli import main


def run(*argv):
    out = io.StringIO()
    try:
        code = main(list(argv), out=out)
    except SystemExit as exc:
        code = exc.code
    return code, out.getvalue()


@pytest.mark.parametrize("k,text", [(1, "t1"), (2, "t1^3 - 3*t3")])
def test_gen_tau(k, text):
    assert run("gen-tau", str(k)) == (0, text + "\n")


def test_gen_tau_formats():
    code, out = run("gen-tau", "3", "--json")
    assert code == 0 and json.loads(out)["tau"] == "t1^6 - 15*t1^3*t3 + 45*t1*t5 - 45*t3^2"
    assert run("gen-tau", "2", "--serialize")[1] == "staircase k = 2\nt1^3 - 3*t3\n"


@pytest.mark.parametrize("argv", [("gen-tau", "0"), ("gen-tau", "x"), ("check", "bogus"), ("frobnicate",),
                                  ("check", "fay", "--tol", "-1"), ("check", "fay", "--q", "2")])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_check_cubic_ii_text():
    code, out = run("check", "cubic-ii", "--tau", "1", "--jobs", "1")
    assert code == 0 and "lhs = 4*z^3" in out and out.startswith("PASS")


def test_check_bad_tau_file(tmp_path):
    f = tmp_path / "bad_tau.txt"
    f.write_text("t1^3 - 2*t3\n")
    code, out = run("check", "fay", "--tau-file", str(f), "--json", "--jobs", "1")
    doc = json.loads(out)
    assert code == 1 and doc["reports"][0]["status"] == "fail" and doc["summary"]["fail"] == 1


def test_check_seventh_json():
    code, out = run("check", "seventh", "--tau", "2", "--json", "--jobs", "1")
    rep = json.loads(out)["reports"][0]
    assert code == 0 and rep["status"] == "pass" and min(rep["side_terms"]) > 250


def test_numeric_check_and_tolerance_override():
    assert run("check", "sine", "--points", "50", "--jobs", "1")[0] == 0
    assert run("check", "theta-fay", "--points", "5", "--tol", "1e-30", "--jobs", "1")[0] == 1


def test_report_schema_and_determinism(tmp_path):
    argv = ("report", "--max-k", "1", "--json", "--no-timing", "--order", "2,3", "--points", "10")
    c1, a = run(*argv, "--jobs", "1")
    c2, b = run(*argv, "--jobs", "2")
    assert c1 == c2 == 0 and a == b
    doc = json.loads(a)
    assert set(doc) == {"tool", "schema_version", "command", "config", "summary", "reports"}
    keys = [(r["check"], r["tau"], json.dumps(r["parameters"], sort_keys=True)) for r in doc["reports"]]
    assert keys == sorted(keys)
    assert all("elapsed_ms" not in r for r in doc["reports"])


def test_report_with_corrupt_tau(tmp_path):
    f = tmp_path / "corrupt.txt"
    f.write_text("t1^3 -- ((\n")
    code, out = run("report", "--max-k", "1", "--tau-file", str(f), "--json", "--order", "2", "--points", "5",
                    "--jobs", "1")
    doc = json.loads(out)
    errors = [r for r in doc["reports"] if r["status"] == "error"]
    assert code == 1 and errors and all(r["message"] for r in errors)


def test_config_file_and_env(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("seed = 9\nformat = json\n")
    proc = subprocess.run([sys.executable, "-m", "tauforge", "check", "fay", "--tau", "1", "--config", str(f)],
                          capture_output=True, text=True, env={"TAUFORGE_TRIALS": "3", "PATH": ""})
    doc = json.loads(proc.stdout)
    assert proc.returncode == 0 and doc["config"]["seed"] == 9 and doc["config"]["trials"] == 3
