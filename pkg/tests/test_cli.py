import argparse
import json
import math
import subprocess
import sys

import pytest

from hznlib.cli import (
    EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, format_complex, main, parse_complex, resolve_tol,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text, z", [("2", 2), ("0.5-1i", 0.5 - 1j), ("-1+2j", -1 + 2j),
                                     ("3i", 3j), ("1e-3+1e2i", 1e-3 + 100j)])
def test_parse_complex(text, z):
    assert parse_complex(text) == z


@pytest.mark.parametrize("bad", ["", "abc", "1+2i+3i", "inf", "nan", "1 + 2i"])
def test_parse_complex_rejects(bad):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex(bad)


def test_format_complex_round_trips():
    for z in (0.25, 1.5 - 2j, -3e-20j, complex(1, -0.0)):
        assert parse_complex(format_complex(z)) == z


def test_eval_values(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "J", "--x", "1")
    assert code == EXIT_OK and float(out.split("\t")[0]) == pytest.approx(0.5 * math.log(2) ** 2, abs=1e-15)
    code, out, _ = run(capsys, "eval", "--fn", "T", "--x", "1")
    assert float(out.split("\t")[0]) == pytest.approx(math.pi ** 2 / 32, abs=1e-15)
    code, out, _ = run(capsys, "eval", "--fn", "Fuv", "--x", "1", "--u", "1", "--v", "-1")
    val, est = out.strip().split("\t")
    assert float(val) == pytest.approx(math.pi ** 2 / 12 - 0.5 * math.log(2) ** 2, abs=1e-13)
    assert est.startswith("err_estimate=")
    code, out, _ = run(capsys, "eval", "--fn", "dilog", "--x", "-1")
    assert float(out) == pytest.approx(-math.pi ** 2 / 12, abs=1e-15)


def test_eval_negative_complex_argument(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "Fuv", "--x", "-0.5+1i", "--u", "0.5", "--v", "0.5")
    assert code == EXIT_OK and out.strip().endswith("i")
    code, out, _ = run(capsys, "eval", "--fn", "Fuv", "--x", "1", "--u", "0.5", "--v", "0.5",
                       "--cross-check")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ("eval", "--fn", "J", "--x", "-1"),                       # x on the negative axis
    ("eval", "--fn", "Fuv", "--x", "1", "--u", "0.5", "--v", "1"),
    ("eval", "--fn", "Fuv", "--x", "1", "--u", "0.5"),          # missing --v
    ("eval", "--fn", "J", "--x", "1", "--u", "0.5"),            # extra --u
    ("eval", "--fn", "nope", "--x", "1"),
    ("verify", "--ids", "no_such_identity"),
    ("tables", "--which", "7"),
    ("verify", "--samples", "0"),
])
def test_usage_and_domain_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_verify_is_deterministic_and_json(capsys):
    argv = ("verify", "--seed", "7", "--samples", "3", "--ids", "two_term_fe,dilog_euler", "j_fe")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == EXIT_OK and out1 == out2
    doc = json.loads(out1)
    assert [d["id"] for d in doc["identities"]] == ["dilog_euler", "j_fe", "two_term_fe"]
    assert "timestamp" not in doc
    code, out, _ = run(capsys, *argv, "--timestamp")
    assert "timestamp" in json.loads(out)


def test_verify_fails_on_impossible_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "3", "--ids", "j_herglotz", "--tol", "1e-300")
    doc = json.loads(out)
    assert code == EXIT_FAIL and doc["summary"]["failed"] == 1


def test_tolerance_precedence(monkeypatch, capsys):
    monkeypatch.setenv("HZN_TOL", "1e-5")
    assert resolve_tol(None) == 1e-5
    assert resolve_tol(1e-7) == 1e-7
    code, out, _ = run(capsys, "verify", "--samples", "2", "--ids", "dilog_euler")
    assert json.loads(out)["tolerance"] == 1e-5
    code, out, _ = run(capsys, "verify", "--samples", "2", "--ids", "dilog_euler", "--tol", "1e-7")
    assert json.loads(out)["tolerance"] == 1e-7
    monkeypatch.setenv("HZN_TOL", "zero")
    code, _, err = run(capsys, "verify", "--samples", "2", "--ids", "dilog_euler")
    assert code == EXIT_USAGE and "HZN_TOL" in err


def test_tables_formats(capsys):
    code, out, _ = run(capsys, "tables", "--which", "2", "--format", "csv")
    assert code == EXIT_OK and len(out.strip().splitlines()) == 6
    code, out, _ = run(capsys, "tables", "--which", "1", "--format", "json")
    assert len(json.loads(out)) == 10
    code, out, _ = run(capsys, "tables", "--format", "md")
    assert out.count("quadratic units") == 2


def test_report_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "report", str(tmp_path / "missing" / "r.json"), "--samples", "1")
    assert code == EXIT_IO and "cannot write" in err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == EXIT_OK and "six_term_fe" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hznlib", "eval", "--fn", "F", "--x", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert float(proc.stdout) == pytest.approx(-0.5 * 0.5772156649015329 ** 2 - math.pi ** 2 / 12
                                               + 0.07281584548367672, abs=1e-13)
