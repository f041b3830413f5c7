import io
import json
import subprocess
import sys

import mpmath as mp
import pytest

from humbert.cli import (EXIT_CHECK_FAILED, EXIT_DOMAIN, EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_USAGE, main,
                         parse_complex)
from humbert.harness import SUITES, read_csv

from conftest import rel


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def value_of(text):
    doc = json.loads(text)
    doc["value"] = mp.mpc(doc["value"]["re"], doc["value"]["im"])
    return doc


def test_parse_complex():
    assert parse_complex("1.5") == 1.5
    assert parse_complex("-5,1") == complex(-5, 1)
    assert parse_complex(" 2 , -0.5 ") == complex(2, -0.5)


def test_eval_psi1_auto():
    code, out = run("eval", "--fn", "psi1", "--a", "1", "--b", "0.5", "--c", "1.5", "--cp", "0.5",
                    "--x", "-0.5", "--y", "2", "--method", "auto", "--format", "json")
    assert code == EXIT_OK
    doc = value_of(out)
    with mp.workdps(40):
        exact = mp.hyper2d({"m+n": [1], "m": [0.5]}, {"m": [1.5], "n": [0.5]}, -0.5, 2)
    assert doc["method"] == "double_series"
    assert rel(doc["value"], exact) < 1e-12


def test_eval_psi2_collapse():
    code, out = run("eval", "--fn", "psi2", "--a", "0.7", "--c", "1.3", "--cp", "0.9", "--x", "0", "--y", "2.5",
                    "--format", "json")
    assert code == EXIT_OK
    assert rel(value_of(out)["value"], mp.hyp1f1(0.7, 0.9, 2.5)) < 1e-12


def test_eval_f2_collapse():
    code, out = run("eval", "--fn", "f2", "--a", "0.9", "--b", "0.6", "--bp", "0.4", "--c", "1.4", "--cp", "1.2",
                    "--x", "0.5", "--y", "0", "--format", "json")
    assert code == EXIT_OK
    assert rel(value_of(out)["value"], mp.hyp2f1(0.9, 0.6, 1.4, 0.5)) < 1e-12


def test_eval_f2_auto_jaeger():
    code, out = run("eval", "--fn", "f2", "--a", "0.9", "--b", "0.6", "--bp", "0.4", "--c", "1.4", "--cp", "1.2",
                    "--x", "-20", "--y", "0.3", "--format", "json")
    assert code == EXIT_OK and value_of(out)["method"] == "jaeger"


def test_eval_negative_complex_flag():
    code, out = run("eval", "--fn", "psi1", "--a", "1", "--b", "0.5", "--c", "1.5", "--cp", "0.5",
                    "--x", "-5,1", "--y", "1")
    assert code == EXIT_OK
    assert "method   = continuation" in out


def test_eval_text_and_csv_formats():
    args = ["eval", "--fn", "psi2", "--a", "0.7", "--c", "1.3", "--cp", "0.9", "--x", "0.5", "--y", "-0.4"]
    code, text = run(*args)
    assert code == EXIT_OK and text.startswith("value    = ")
    code, csvout = run(*args, "--format", "csv")
    assert csvout.splitlines()[0] == "fn,method,re,im,abs_err,rel_err,terms,evals"


def test_eval_json_fields():
    code, out = run("eval", "--fn", "psi2", "--a", "0.7", "--c", "1.3", "--cp", "0.9", "--x", "0.5", "--y", "-0.4",
                    "--format", "json")
    assert {"value", "abs_err", "method", "terms", "evals"} <= set(value_of(out))


def test_exit_domain(capsys):
    code, _ = run("eval", "--fn", "psi1", "--a", "1", "--b", "0.5", "--c", "1.5", "--cp", "0.5",
                  "--x", "-5", "--y", "1", "--method", "double_series")
    assert code == EXIT_DOMAIN
    assert "domain error" in capsys.readouterr().err


def test_exit_pole():
    code, _ = run("eval", "--fn", "psi1", "--a", "1", "--b", "0.5", "--c", "-1", "--cp", "0.5", "--x", "0.1", "--y", "1")
    assert code == EXIT_DOMAIN


def test_exit_no_convergence():
    code, _ = run("eval", "--fn", "psi1", "--a", "1", "--b", "0.5", "--c", "1.5", "--cp", "0.5",
                  "--x", "0.5", "--y", "50", "--method", "double_series", "--max-terms", "20")
    assert code == EXIT_NO_CONVERGENCE


@pytest.mark.parametrize("argv", [[], ["eval", "--fn", "psi1"], ["eval", "--fn", "psi1", "--x", "0", "--y", "0"],
                                  ["eval", "--fn", "psi3", "--x", "0", "--y", "0"],
                                  ["eval", "--fn", "psi2", "--a", "1", "--c", "1", "--cp", "1", "--x", "a,b", "--y", "0"],
                                  ["eval", "--fn", "psi2", "--a", "1", "--c", "1", "--cp", "1", "--x", "0", "--y", "0",
                                   "--method", "euler"],
                                  ["verify"], ["verify", "--suite", "bogus"], ["verify", "--suite", "henkel", "--tol", "x=1"],
                                  ["bogus"]])
def test_exit_usage(argv, capsys):
    code, _ = run(*argv)
    assert code == EXIT_USAGE
    assert capsys.readouterr().err


def test_precision_env(monkeypatch):
    monkeypatch.setenv("HUMBERT_PRECISION", "1e-6")
    code, out = run("eval", "--fn", "psi2", "--a", "0.7", "--c", "1.3", "--cp", "0.9", "--x", "0.5", "--y", "-0.4",
                    "--format", "json")
    doc = value_of(out)
    assert code == EXIT_OK and 1e-20 < doc["abs_err"] / abs(doc["value"]) <= 1e-6


def test_verify_list():
    code, out = run("verify", "--list")
    assert code == EXIT_OK and out.split() == list(SUITES) and len(out.split()) == 12


def test_verify_henkel_grid(tmp_path):
    path = tmp_path / "henkel.csv"
    code, out = run("verify", "--suite", "henkel", "--xi", "0.5,1,2", "--z", "1e-2,1e-3,1e-4", "--out", str(path))
    assert code == EXIT_OK and out.startswith("henkel: PASS")
    reports = read_csv(path)
    assert reports[0].check_name == "henkel" and reports[0].passed


def test_verify_failure_exit_code():
    # an impossibly tight slope tolerance must fail the check, not the process
    code, out = run("verify", "--suite", "decay-psi1-smally", "--slope-tol", "1e-6")
    assert code == EXIT_CHECK_FAILED and "FAIL slope" in out


def test_verify_cross_psi1_deterministic():
    _, first = run("verify", "--suite", "cross-psi1", "--seed", "7", "--format", "csv")
    _, second = run("verify", "--suite", "cross-psi1", "--seed", "7", "--format", "csv")
    assert first == second and first.startswith("suite,check,")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "humbert", "verify", "--list"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == list(SUITES)
