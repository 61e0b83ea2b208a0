from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from liouvillian.cli import run

MANIFESTS = sorted((Path(__file__).resolve().parent.parent / "manifests").glob("*.txt"))


def call(*argv: str):
    code, out, err = run(list(argv))
    return code, out, err


def test_solve_verdicts_exit_zero():
    code, out, _ = call("solve", "--M", "x^2+2")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "SL2" and data["schema_version"] == "1"
    code, out, _ = call("solve", "--M", "x^4 + 8*x")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "solvable"


def test_parse_error_reports_position():
    code, out, err = call("solve", "--M", "x^2+*3")
    assert code == 2 and out == ""
    assert err.splitlines()[1:] == ["  x^2+*3", "      ^"]


def test_usage_errors():
    assert call("solve")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("delta", "--p", "3..1")[0] == 2
    assert call("solve", "--M", "x^2", "--tol", "-1")[0] == 2


def test_budget_exit_code():
    code, _, err = call("variety", "--n", "3", "--d", "4", "--term-budget", "50")
    assert code == 3 and "term budget" in err


def test_delta_symbolic():
    code, out, _ = call("delta", "--p", "1", "--symbolic")
    (row,) = json.loads(out)["results"]
    assert code == 0 and row["delta"] == "2*a*a'' - 2*a*b' - 3*a'^2 + 4*a'*b - b^2"


def test_spectrum_command():
    code, out, _ = call("spectrum", "--U", "x^6-9*x^2")
    data = json.loads(out)
    assert code == 0
    assert data["spectral_polynomial"] == "lam^2 - 24"
    assert [e["exact"] for e in data["eigenvalues"]] == ["-2*sqrt(6)", "2*sqrt(6)"]


def test_text_format():
    code, out, _ = call("spectrum", "--U", "x^6-9*x^2", "--format", "text")
    assert code == 0 and "spectral_polynomial: lam^2 - 24" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("solve", "--M", "x^6 - 9*x^2 - 24"),
        ("variety", "--n", "2", "--d", "0..4"),
        ("spectrum", "--U", "x^6 - 13*x^2"),
        ("delta", "--p", "0..3", "--symbolic"),
    ],
)
def test_output_is_deterministic(argv):
    first = call(*argv)
    assert all(call(*argv) == first for _ in range(2))


@pytest.mark.parametrize("manifest", MANIFESTS, ids=lambda p: p.stem)
def test_manifests_pass(manifest):
    code, out, _ = call("batch", str(manifest))
    summary = json.loads(out)["summary"]
    assert code == 0 and summary["fail"] == 0 and summary["error"] == 0 and summary["pass"] > 0


def test_batch_parallel_matches_serial():
    path = str(MANIFESTS[0])
    assert call("batch", path, "--jobs", "2") == call("batch", path)


def test_batch_mismatch_and_missing(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("# comment\n\nsolve --M x^2+3 => sha256:" + "0" * 64 + "\n")
    code, out, _ = call("batch", str(bad))
    assert code == 1 and json.loads(out)["summary"]["fail"] == 1
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    code, out, _ = call("batch", str(empty))
    assert code == 0 and json.loads(out)["summary"]["pass"] == 0
    assert call("batch", str(tmp_path / "missing.txt"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "liouvillian", "solve", "--M", "x^2+3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "solvable"
