"""Command-line behavior: table output, exit codes, flags."""

import json

import pytest

from galext.cli import main

TORIC_TOML = """
[category]
preset = "toric-code"
"""


def test_condense_preset_table(capsys):
    assert main(["condense", "--preset", "toric-code"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert "label" in lines[1] and "dim" in lines[1] and "grade" in lines[1]
    assert lines[2].split() == ["1", "1", "e"]
    assert lines[3].split() == ["m", "1", "g"]
    assert "spectrum: e g" in out
    assert "dimension: 2 = 4 / 2" in out


def test_condense_ds3_six_rows(capsys):
    assert main(["condense", "--preset", "ds3"]) == 0
    out = capsys.readouterr().out
    rows = [l.split() for l in out.splitlines()[2:8]]
    assert len(rows) == 6
    assert all(r[1] == "1" for r in rows)


def test_condense_repz4_trivial_grades(capsys):
    assert main(["condense", "--preset", "repz4-z2"]) == 0
    out = capsys.readouterr().out
    rows = [l.split() for l in out.splitlines()[2:4]]
    assert [r[2] for r in rows] == ["e", "e"]
    assert "spectrum: e" in out


def test_exit_codes_for_config_errors(capsys):
    assert main(["condense", "--preset", "nope"]) == 2
    assert "configuration error" in capsys.readouterr().err
    assert main(["condense"]) == 2
    assert main(["condense", "--preset", "toric-code", "--spec", "x.toml"]) == 2
    assert main(["condense", "--spec", "/does/not/exist.toml"]) == 2
    assert main(["bogus-command"]) == 2
    assert main(["condense", "--backend", "quad", "--preset", "toric-code"]) == 2


def test_verify_pass_and_fail_exits(capsys):
    assert main(["verify", "--preset", "toric-code"]) == 0
    out = capsys.readouterr().out
    assert "0 failed" in out
    assert main(["verify", "--preset", "corrupted-hexagon"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  hexagon" in out and "1 failed" in out


def test_verify_filter_and_out(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(["verify", "--preset", "toric-code", "--filter", "braiding",
                 "--out", str(out_path)])
    assert code == 0
    report = json.loads(out_path.read_text())
    assert [c["name"] for c in report["checks"]] == [
        "crossed-braiding", "braiding-relations", "braiding-naturality",
        "braiding-slots"]
    out = capsys.readouterr().out
    assert out.count("PASS") == 4


def test_condense_spec_file_and_out(tmp_path, capsys):
    spec = tmp_path / "run.toml"
    spec.write_text(TORIC_TOML)
    out_path = tmp_path / "condense.json"
    assert main(["condense", "--spec", str(spec), "--out", str(out_path)]) == 0
    report = json.loads(out_path.read_text())
    assert report["example"] == "toric-code"
    assert [s["grade"] for s in report["simples"]] == ["e", "g"]
    capsys.readouterr()


def test_selftest_exit_codes(capsys):
    assert main(["selftest"]) == 0
    assert main(["selftest", "--backend", "exact"]) == 0
    assert main(["selftest", "--tol", "0"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    for name in ("toric-code", "ds3", "repz4-z2", "toric-x-repz2",
                 "drinfeld-z2", "corrupted-hexagon"):
        assert name in out
