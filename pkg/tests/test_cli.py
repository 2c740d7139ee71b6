"""Command line interface: exit codes, formats, determinism, caching."""

import json
import subprocess
import sys

import pytest

from frobpi import algebra_to_json, catalog
from frobpi.cli import main


def run(capsys, argv):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_dims_table(capsys):
    code, out, _ = run(capsys, ["dims", "--pair", "t4", "--max-degree", "6", "--no-cache"])
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert any("| 6 " in l and " 35 " in l for l in lines)


def test_unknown_pair_is_usage_error(capsys):
    code, _, err = run(capsys, ["dims", "--pair", "nonesuch", "--no-cache"])
    assert code == 2
    assert "nonesuch" in err


def test_unknown_suite_is_usage_error(capsys):
    code, _, err = run(capsys, ["verify", "--suite", "sigma,frobnicate", "--no-cache"])
    assert code == 2
    assert "frobnicate" in err


def test_bad_field_descriptor(capsys):
    code, _, err = run(capsys, ["dims", "--pair", "t4", "--field", "fp:6", "--no-cache"])
    assert code == 2


def test_sigma_suite_passes(capsys):
    code, out, _ = run(
        capsys,
        ["verify", "--suite", "sigma", "--field", "q", "--max-degree", "8", "--no-cache"],
    )
    assert code == 0
    records = json.loads(out)
    assert len(records) == 6
    assert all(r["pass"] for r in records)


def test_classification_suite_reports_bad_reject(capsys):
    # the char-2 pencil quotient is Frobenius despite its catalog listing,
    # so the classification suite honestly exits 1
    code, out, _ = run(capsys, ["verify", "--suite", "classification", "--no-cache"])
    assert code == 1
    records = json.loads(out)
    bad = [r for r in records if not r["pass"]]
    assert [r["algebra"] for r in bad] == ["reject-char2-pencil"]


def test_verify_output_deterministic(capsys):
    argv = ["verify", "--suite", "invariants", "--max-degree", "8", "--no-cache"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_cache_round_trip_same_output(capsys, tmp_path):
    base = ["dims", "--pair", "bikwad", "--max-degree", "8"]
    _, cold, _ = run(capsys, base + ["--cache-dir", str(tmp_path)])
    assert list(tmp_path.iterdir())
    _, warm, _ = run(capsys, base + ["--cache-dir", str(tmp_path)])
    _, none, _ = run(capsys, base + ["--no-cache"])
    assert cold == warm == none


def test_cache_env_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FROBPI_CACHE", str(tmp_path / "envcache"))
    run(capsys, ["dims", "--pair", "split4", "--max-degree", "4"])
    assert (tmp_path / "envcache").is_dir()


def test_formats(capsys):
    argv = ["verify", "--suite", "sigma", "--field", "q", "--max-degree", "6", "--no-cache"]
    _, out, _ = run(capsys, argv + ["--format", "json"])
    assert isinstance(json.loads(out), list)
    _, out, _ = run(capsys, argv + ["--format", "csv"])
    header = out.splitlines()[0].split(",")
    assert "pair" in header and "pass" in header
    _, out, _ = run(capsys, argv + ["--format", "md"])
    assert set(out.splitlines()[1]) <= {"|", "-", " "}


def test_quiver_totals(capsys):
    code, out, _ = run(capsys, ["quiver", "--max-degree", "4", "--format", "csv"])
    assert code == 0
    rows = out.splitlines()
    idx = rows[0].split(",").index("quiver_total")
    totals = [int(r.split(",")[idx]) for r in rows[1:]]
    assert totals == [5, 8, 15, 16, 25]


def test_invariants_command(capsys):
    code, out, _ = run(capsys, ["invariants", "--max-degree", "12", "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [r["dim"] for r in rows][::4] == [1, 2, 3, 4]


def test_deform_family(capsys):
    code, out, _ = run(
        capsys, ["deform", "--family", "3", "--max-degree", "6", "--format", "json", "--no-cache"]
    )
    assert code == 0
    records = json.loads(out)
    assert all(r["pass"] for r in records)


def test_deform_needs_family(capsys):
    code, _, err = run(capsys, ["deform", "--max-degree", "4"])
    assert code == 2


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, ["catalog"])
    assert code == 0
    assert out.count("true") == 6
    assert out.count("false") == 4


def test_algebra_json_input(capsys, tmp_path):
    doc = algebra_to_json(catalog("t4"))
    path = tmp_path / "t4.json"
    path.write_text(doc)
    code, out, _ = run(
        capsys, ["dims", "--algebra", str(path), "--max-degree", "4", "--no-cache"]
    )
    assert code == 0
    assert any("| 4 " in l and " 25 " in l for l in out.splitlines())


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "frobpi", "quiver", "--max-degree", "2", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "15" in proc.stdout
