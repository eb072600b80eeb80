"""Scenario configuration, trial loops, CSV/manifest output, and the CLI."""

import csv
import dataclasses
import json
import math

import numpy as np
import pytest

from dataclasses import replace

from pass_robust import (CSV_COLUMNS, ScenarioConfig, load_config,
                         run_scenario, run_sweep, run_trial, trial_rng,
                         write_csv, write_manifest)
from pass_robust.cli import main as cli_main

# small but complete scenario for fast end-to-end checks
FAST = ScenarioConfig(trials=2, num_samples=300, max_iters=4)


def test_defaults():
    cfg = ScenarioConfig()
    assert (cfg.num_waveguides, cfg.pas_per_waveguide) == (4, 4)
    assert (cfg.area_length, cfg.area_width, cfg.height) == (50.0, 6.0, 5.0)
    assert cfg.carrier_frequency == 28e9
    assert cfg.attenuation_db_per_m == 0.08
    assert (cfg.transmit_power_dbm, cfg.noise_power_dbm) == (0.0, -90.0)
    assert cfg.activation == "continuous" and cfg.grid_points == 10_000
    assert cfg.uncertainty == "norm_bounded" and cfg.delta_bar == 0.3
    assert (cfg.trials, cfg.seed, cfg.max_iters) == (100, 1, 20)
    # min_spacing sentinel resolves to half a wavelength
    assert cfg.spacing() == pytest.approx(0.005357142857142857, rel=1e-14)
    assert replace(cfg, min_spacing=0.25).spacing() == 0.25
    assert replace(cfg, activation="discrete").grid_points == 100


def test_config_validation():
    with pytest.raises(ValueError):
        ScenarioConfig(activation="hover")
    with pytest.raises(ValueError):
        ScenarioConfig(uncertainty="fuzzy")
    with pytest.raises(ValueError):
        ScenarioConfig(trials=0)
    with pytest.raises(ValueError):
        ScenarioConfig(max_iters=-1)
    with pytest.raises(ValueError):
        ScenarioConfig(delta_bar=-0.1)


def test_load_config_grouped_and_flat(tmp_path):
    p = tmp_path / "scenario.toml"
    p.write_text(
        "trials = 7\n"
        "[system]\n"
        "num_waveguides = 2\n"
        "pas_per_waveguide = 3\n"
        "[uncertainty_model]\n"
        'uncertainty = "probabilistic"\n'
        "epsilon_bar = 0.2\n")
    cfg = load_config(p)
    assert cfg.trials == 7
    assert (cfg.num_waveguides, cfg.pas_per_waveguide) == (2, 3)
    assert cfg.uncertainty == "probabilistic" and cfg.epsilon_bar == 0.2
    # overrides win over the file
    assert load_config(p, overrides={"trials": 3}).trials == 3


def test_load_config_rejects_bad_keys(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text("[a]\ntrials = 1\n[b]\ntrials = 2\n")
    with pytest.raises(ValueError, match="duplicate"):
        load_config(p)
    p2 = tmp_path / "unknown.toml"
    p2.write_text("num_wave_guides = 4\n")
    with pytest.raises(ValueError, match="unknown config keys"):
        load_config(p2)


def test_trial_rng_streams():
    a = trial_rng(1, 0).uniform(size=4)
    b = trial_rng(1, 0).uniform(size=4)
    c = trial_rng(1, 1).uniform(size=4)
    d = trial_rng(2, 0).uniform(size=4)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_run_trial_metric_relations():
    t = run_trial(FAST, 0)
    assert 0.0 < t.pass_lossy_wc_ar <= t.pass_lossy_perfect_ar
    assert t.pass_lossless_wc_ar >= t.pass_lossy_wc_ar
    assert 0.0 < t.baseline_wc_ar <= t.baseline_perfect_ar
    assert math.isnan(t.nonoutage_ar)  # norm-bounded model has no outage figure


def test_run_trial_probabilistic_mode():
    cfg = replace(FAST, uncertainty="probabilistic", epsilon_bar=0.1,
                  nonoutage_target=0.9, evaluate_lossless=False,
                  evaluate_baseline=False)
    t = run_trial(cfg, 0)
    assert t.nonoutage_ar == t.pass_lossy_wc_ar
    assert math.isnan(t.pass_lossless_wc_ar)
    assert math.isnan(t.baseline_wc_ar)


def test_run_trial_is_reproducible():
    a = run_trial(FAST, 1)
    b = run_trial(FAST, 1)
    # nan-tolerant fieldwise comparison (nonoutage is nan in this mode)
    np.testing.assert_equal(dataclasses.asdict(a), dataclasses.asdict(b))


def test_run_scenario_row_schema():
    row = run_scenario(FAST)
    assert list(row) == CSV_COLUMNS
    assert math.isnan(row["axis_value"])
    assert row["trials"] == 2 and row["seed"] == 1
    assert row["pass_lossy_wc_ar"] > 0


def test_run_sweep_axis_rules():
    with pytest.raises(ValueError, match="unknown sweep axis"):
        run_sweep(FAST, "bandwidth", [1.0])
    with pytest.raises(ValueError, match="probabilistic"):
        run_sweep(FAST, "epsilon_bar", [0.1])
    prob = replace(FAST, uncertainty="probabilistic")
    with pytest.raises(ValueError, match="norm_bounded"):
        run_sweep(prob, "delta_bar", [0.1])


def test_run_sweep_rows():
    cfg = replace(FAST, evaluate_lossless=False, evaluate_baseline=False)
    rows = run_sweep(cfg, "pt_dbm", [-10.0, 0.0])
    assert [r["axis_value"] for r in rows] == [-10.0, 0.0]
    assert rows[1]["pass_lossy_wc_ar"] > rows[0]["pass_lossy_wc_ar"]


def test_write_csv_appends_and_guards_schema(tmp_path):
    row = {c: float(i) for i, c in enumerate(CSV_COLUMNS)}
    row["trials"], row["seed"] = 2, 1
    path = tmp_path / "out.csv"
    write_csv(path, [row])
    write_csv(path, [row])
    with open(path, newline="") as fh:
        lines = list(csv.reader(fh))
    assert lines[0] == CSV_COLUMNS
    assert len(lines) == 3 and lines[1] == lines[2]
    bad = tmp_path / "bad.csv"
    bad.write_text("wrong,header\n1,2\n")
    with pytest.raises(ValueError, match="different schema"):
        write_csv(bad, [row])


def test_csv_cell_formatting(tmp_path):
    row = dict.fromkeys(CSV_COLUMNS, float("nan"))
    row.update(axis_value=0.123456789123, pass_lossy_wc_ar=7.0, trials=10, seed=3)
    path = write_csv(tmp_path / "fmt.csv", [row])
    with open(path, newline="") as fh:
        rec = list(csv.DictReader(fh))[0]
    assert rec["axis_value"] == "0.123456789"  # nine significant digits
    assert rec["trials"] == "10" and rec["seed"] == "3"
    assert rec["nonoutage_ar"] == "nan"


def test_write_manifest(tmp_path):
    path = write_manifest(tmp_path / "manifest.json", FAST, 1.5,
                          "pass-robust run scenario.toml", ["run.csv"],
                          axis="pt_dbm", values=[0.0, 10.0])
    doc = json.loads(path.read_text())
    assert doc["config"]["trials"] == 2
    assert doc["axis"] == "pt_dbm" and doc["values"] == [0.0, 10.0]
    assert doc["wall_time_s"] == 1.5
    assert set(doc["versions"]) == {"pass_robust", "python", "numpy", "cvxpy"}


def _write_fast_config(tmp_path):
    p = tmp_path / "fast.toml"
    p.write_text("trials = 2\nnum_samples = 300\nmax_iters = 4\n")
    return p


def test_cli_run(tmp_path, capsys):
    cfgfile = _write_fast_config(tmp_path)
    out = tmp_path / "results"
    rc = cli_main(["run", str(cfgfile), "--out", str(out), "--seed", "5"])
    assert rc == 0
    with open(out / "run.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1 and rows[0]["seed"] == "5"
    doc = json.loads((out / "manifest.json").read_text())
    assert doc["config"]["seed"] == 5
    assert "run.csv" in capsys.readouterr().out


def test_cli_sweep(tmp_path):
    cfgfile = _write_fast_config(tmp_path)
    out = tmp_path / "results"
    rc = cli_main(["sweep", str(cfgfile), "--axis", "pt_dbm",
                   "--values", "-10,0", "--out", str(out), "--trials", "1"])
    assert rc == 0
    with open(out / "sweep_pt_dbm.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["axis_value"] for r in rows] == ["-10", "0"]
    assert all(r["trials"] == "1" for r in rows)


def test_cli_validate(tmp_path, capsys):
    rc = cli_main(["validate", "exclusion", "--out", str(tmp_path)])
    assert rc == 0
    text = capsys.readouterr().out
    assert "[PASS]" in text and "[FAIL]" not in text
    report = json.loads((tmp_path / "validate_exclusion.json").read_text())
    assert report["passed"] is True
