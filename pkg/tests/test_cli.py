"""Command-line front end: flags, files, exit codes, determinism."""

import json

import numpy as np
import pytest

from qduet.cli import CSV_HEADER, list_presets, main, read_csv, write_csv
from qduet.dynamics import decision_series
from qduet.model import PRESETS, save_scenario, scenario_to_dict


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_presets_table(capsys):
    code, out, err = run_cli(["--list-presets"], capsys)
    assert code == 0
    rows = [line for line in out.splitlines() if line.startswith("fig")]
    assert len(rows) == 8
    fig3 = [line for line in rows if line.startswith("fig3")]
    assert all("C2" in line and "100" in line for line in fig3)
    fig2 = [line for line in rows if line.startswith("fig2")]
    assert all(" 1 " in line for line in fig2)
    fig6 = [line for line in rows if line.startswith("fig6")]
    assert all("10" in line for line in fig6)


def test_run_preset_writes_outputs(tmp_path, capsys):
    code, out, err = run_cli(
        ["--preset", "fig6-left", "--out", str(tmp_path), "--svg"], capsys)
    assert code == 0, err
    csv_path = tmp_path / "fig6-left.csv"
    assert csv_path.exists()
    lines = csv_path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 5002
    for j in (1, 2):
        svg = (tmp_path / f"fig6-left_n{j}.svg").read_text()
        assert svg.startswith("<svg")
        assert "polyline" in svg
    assert "asymptotics player 1" in out
    assert "decision player 2" in out


def test_run_quiet_without_csv(tmp_path, capsys):
    code, out, err = run_cli(
        ["--preset", "fig6-left", "--out", str(tmp_path), "--no-csv"], capsys)
    assert code == 0
    assert not (tmp_path / "fig6-left.csv").exists()


def test_csv_round_trip_is_exact(tmp_path):
    series = decision_series(PRESETS["fig6-left"])
    path = tmp_path / "series.csv"
    write_csv(path, series)
    back = read_csv(path)
    # 17 significant digits reproduce doubles exactly
    assert np.array_equal(back.times, series.times)
    assert np.array_equal(back.n, series.n)
    assert np.array_equal(back.mu, series.mu)
    assert np.array_equal(back.dmu, series.dmu)
    assert np.array_equal(back.nB, series.nB)


def test_cli_runs_are_deterministic(tmp_path, capsys):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    for out_dir in (out_a, out_b):
        code, _, err = run_cli(
            ["--preset", "fig6-right", "--out", str(out_dir)], capsys)
        assert code == 0, err
    assert (out_a / "fig6-right.csv").read_bytes() == \
           (out_b / "fig6-right.csv").read_bytes()


def test_scenario_file_round_trip(tmp_path, capsys):
    path = tmp_path / "custom.json"
    save_scenario(PRESETS["fig6-left"], path)
    code, out, err = run_cli(
        ["--scenario", str(path), "--out", str(tmp_path), "--t-max", "0.1"],
        capsys)
    assert code == 0, err
    lines = (tmp_path / "fig6-left.csv").read_text().splitlines()
    assert len(lines) == 1002


def test_missing_scenario_file(tmp_path, capsys):
    code, out, err = run_cli(
        ["--scenario", str(tmp_path / "missing.json")], capsys)
    assert code == 1
    assert "not found" in err


def test_invalid_json_scenario(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, out, err = run_cli(["--scenario", str(bad)], capsys)
    assert code == 1
    assert "error" in err


def test_grid_rule_violation_reports_required_dt(tmp_path, capsys):
    code, out, err = run_cli(
        ["--preset", "fig1-left", "--dt", "0.01", "--out", str(tmp_path)],
        capsys)
    assert code == 1
    assert "need dt" in err


def test_unknown_preset(capsys):
    code, out, err = run_cli(["--preset", "nope"], capsys)
    assert code == 1
    assert "unknown preset" in err


def test_no_source_given(capsys):
    code, out, err = run_cli([], capsys)
    assert code == 1


def test_bad_flag_is_config_error(capsys):
    code, out, err = run_cli(["--bogus"], capsys)
    assert code == 1


def test_oracle_and_ltp_reports(tmp_path, capsys):
    path = tmp_path / "closed.json"
    d = scenario_to_dict(PRESETS["fig6-left"])
    d.update(lambda1=0.0, lambda2=0.0, label="closed", t_max=0.2)
    path.write_text(json.dumps(d))
    code, out, err = run_cli(
        ["--scenario", str(path), "--out", str(tmp_path),
         "--oracle", "--ltp"], capsys)
    assert code == 0, err
    assert "propagator defect" in out
    assert "closed-system deviation" in out
    assert (tmp_path / "closed_ltp.csv").exists()
    assert "max |R - dmu|" in out
    dev_line = [l for l in out.splitlines() if "closed-system deviation" in l][0]
    assert float(dev_line.rsplit(" ", 1)[1]) < 1e-8


def test_all_presets_conflicts_with_single_source(capsys):
    code, out, err = run_cli(["--all-presets", "--preset", "fig1-left"], capsys)
    assert code == 1
