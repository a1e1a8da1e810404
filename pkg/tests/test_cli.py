import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from perisplit import cli
from perisplit.verify import golden_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank(capsys):
    code, out, _ = run(capsys, "rank", "--kind", "signed", "--n", "3")
    assert code == 0
    assert json.loads(out) == {"kind": "B-signed", "n": 3, "rank": 48}


def test_global_flags_before_or_after(capsys):
    _, a, _ = run(capsys, "--format", "text", "rank", "--kind", "D", "--n", "2")
    _, b, _ = run(capsys, "rank", "--kind", "D", "--n", "2", "--format", "text")
    assert a == b and "rank: 4" in a


@pytest.mark.parametrize("argv", [
    ["rank", "--kind", "nope", "--n", "3"],
    ["rank", "--kind", "generalized", "--n", "2"],
    ["rank", "--n", "3"],
    ["--budget", "0", "rank", "--kind", "B", "--n", "2"],
    [],
])
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_budget_exhaustion_exits_three(capsys):
    code, _, err = run(capsys, "--budget", "2", "jpw", "betti", "--n", "5", "--r", "4", "--oracle")
    assert code == 3
    assert "budget" in err.lower()


def test_probe_va(capsys):
    code, out, _ = run(capsys, "probe", "--family", "B-case-VA", "--lambda", "2")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == "0" and data["slope"] == "16"
    assert data["discriminant"]["value"] == "0" and data["discriminant"]["slope"] != "0"


def test_betti_oracle_agrees(capsys):
    code, out, _ = run(capsys, "jpw", "betti", "--n", "5", "--r", "4", "--oracle")
    data = json.loads(out)
    assert code == 0 and data["diff"] == []
    cells = {(e["i"], e["j"]): e["dim"] for e in data["entries"]}
    assert cells == {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}


def test_betti_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "jpw", "betti", "--n", "5", "--r", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert {(r["i"], r["j"], r["dim"]) for r in rows} == {("0", "0", "1"), ("1", "2", "5"), ("2", "3", "5"), ("3", "5", "1")}


def test_discriminant_csv_rows(capsys):
    code, out, _ = run(capsys, "--format", "csv", "discriminant", "--kind", "B", "--n", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["key", "value"]


@pytest.mark.parametrize("argv", [
    ["jpw", "betti", "--n", "4", "--r", "3", "--oracle"],
    ["detvar", "sample", "--n", "5", "--r", "3", "--eigen", "2,3"],
    ["cohomology-specialize", "--kind", "B-fact", "--n", "2", "--p", "1"],
])
def test_output_is_byte_identical(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--profile", "quick")
    report = json.loads(out)
    assert code == 0 and report["ok"]
    assert all(c["ok"] for c in report["checks"])


def test_verify_reports_corrupted_golden(capsys, tmp_path):
    for n, r in ((4, 3), (5, 4), (3, 1), (4, 1)):
        shutil.copy(golden_path(n, r), tmp_path / golden_path(n, r).name)
    target = tmp_path / golden_path(5, 4).name
    data = json.loads(target.read_text())
    data["entries"][1]["dim"] = 4
    target.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--profile", "quick", "--golden-dir", str(tmp_path))
    report = json.loads(out)
    assert code == 2 and not report["ok"]
    betti = next(c for c in report["checks"] if c["name"] == "betti tables")
    assert not betti["ok"] and "golden n=5 r=4" in betti["detail"]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "perisplit.cli", "rank", "--kind", "D", "--n", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rank"] == 192


def test_budget_flag_does_not_leak(capsys, monkeypatch):
    monkeypatch.delenv("PERISPLIT_BUDGET", raising=False)
    run(capsys, "--budget", "2", "jpw", "betti", "--n", "5", "--r", "4", "--oracle")
    code, _, _ = run(capsys, "jpw", "betti", "--n", "5", "--r", "4", "--oracle")
    assert code == 0
