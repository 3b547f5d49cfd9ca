import json
import math

import numpy as np
import pytest

from spikesep.harness.cli import main
from spikesep.harness.config import ComparisonReport, ExperimentConfig, GridSpec
from spikesep.harness.emit import emit_csv, emit_svg, parse_csv
from spikesep.harness.experiments import (
    bulk_edge,
    exact_density_curve,
    run_density_experiment,
    run_onset_scan,
    sample_batch,
)
from spikesep.harness.verify import run_verify
from spikesep.kernels import ShiftedChiral, ShiftedGUE, SpikedLUE
from spikesep.spectra import DensityCurve


def _small_mc_config(trials=400, seed=11, bins=41):
    return ExperimentConfig(
        kind="mc", model=ShiftedGUE(10, 2, 4.0), grid=GridSpec(-7.0, 9.0, 41),
        trials=trials, bins=bins, master_seed=seed,
    )


def test_csv_round_trip_exact(tmp_path):
    grid = np.linspace(-1.0, 1.0, 7)
    vals = np.abs(np.sin(grid) * 1e-3) + 1e-17
    curve = DensityCurve(grid, vals, {"model": "demo", "kind": "exact"})
    report = ComparisonReport(l1_distance=0.5, trace_exact=1.0)
    path = emit_csv([curve], report, tmp_path / "c.csv")
    meta, grid2, cols = parse_csv(path)
    assert np.array_equal(grid2, grid)
    assert np.array_equal(cols[0], vals)
    assert "report" in meta and json.loads(meta["report"])["l1_distance"] == 0.5


def test_csv_requires_common_grid(tmp_path):
    a = DensityCurve(np.linspace(0, 1, 5), np.ones(5))
    b = DensityCurve(np.linspace(0, 2, 5), np.ones(5))
    with pytest.raises(ValueError):
        emit_csv([a, b], None, tmp_path / "x.csv")


def test_svg_one_polyline_per_curve(tmp_path):
    grid = np.linspace(0, 1, 9)
    curves = [
        DensityCurve(grid, np.ones(9), {"model": "one"}),
        DensityCurve(grid, 2 * np.ones(9), {"model": "two"}),
    ]
    path = emit_svg(curves, tmp_path / "p.svg")
    text = path.read_text()
    assert text.count("<polyline") == 2
    assert "viewBox=\"0 0 800 500\"" in text


def test_mc_experiment_deterministic_and_worker_independent(tmp_path, monkeypatch):
    cfg = _small_mc_config()
    exact1, emp1, rep1 = run_density_experiment(cfg)
    monkeypatch.setenv("SPIKESEP_WORKERS", "3")
    exact2, emp2, rep2 = run_density_experiment(cfg)
    monkeypatch.delenv("SPIKESEP_WORKERS")
    assert np.array_equal(emp1.values, emp2.values)
    assert rep1.l1_distance == rep2.l1_distance
    p1 = emit_csv([emp1], rep1, tmp_path / "a.csv")
    p2 = emit_csv([emp2], rep2, tmp_path / "b.csv")
    assert p1.read_bytes() == p2.read_bytes()
    q1 = emit_csv([exact1], rep1, tmp_path / "ea.csv")
    q2 = emit_csv([exact2], rep2, tmp_path / "eb.csv")
    assert q1.read_bytes() == q2.read_bytes()


def test_mc_reports_grid_coverage():
    cfg = _small_mc_config()
    _, _, report = run_density_experiment(cfg)
    assert report.pass_flags["grid_covers_support"]
    assert report.trace_exact == pytest.approx(10.0, abs=1e-3)
    assert report.l1_distance < 0.2


def test_onset_scan_small_case():
    j = math.sqrt(2.0 * 60)
    cfg = ExperimentConfig(
        kind="scan", model=ShiftedGUE(60, 1, 0.0), grid=GridSpec(0.8 * j, 1.8 * j, 301),
        spikes=(0.0, 2.5),
    )
    reports = run_onset_scan(cfg)
    assert reports[0.0].pass_flags["no_peak_expected"]
    assert reports[2.5].pass_flags["peak_found"]
    pred = reports[2.5].predictor_location
    peak = reports[2.5].peak_locations[0]
    assert abs(peak - pred) < 0.05 * pred


def test_bulk_edges():
    assert bulk_edge(ShiftedGUE(50, 1, 0.0)) == pytest.approx(10.0)
    assert bulk_edge(SpikedLUE(50, 1.0, 1, 0.5)) == pytest.approx(200.0)
    assert bulk_edge(ShiftedChiral(25, 1.0, 1, 0.0)) == pytest.approx(10.0)


def test_exact_density_curve_meta():
    curve = exact_density_curve(ShiftedGUE(6, 1, 2.0), np.linspace(-6, 8, 101))
    assert curve.meta["mass"] == 6.0
    assert np.all(curve.values >= 0)


def test_sample_batch_chiral_counts_positive_only():
    edges = np.linspace(0.0, 12.0, 25)
    counts, largest = sample_batch(ShiftedChiral(8, 2.0, 1, 3.0), 2, 50, 5, edges)
    assert counts.sum() <= 50 * 8
    assert np.all(largest > 0)


def test_verify_report_shape():
    report = run_verify("spectra")
    assert report["passed"] and report["n_checks"] == 2
    with pytest.raises(ValueError):
        run_verify("nonsense")


def test_verify_detects_injected_sign_flip(monkeypatch):
    import spikesep.harness.verify as verify_mod

    original = verify_mod.incomplete_hermite

    def flipped(kind, j, x, n, r, c):
        value = original(kind, j, x, n, r, c)
        return -value if (kind == "tilde" and j == 1) else value

    monkeypatch.setattr(verify_mod, "incomplete_hermite", flipped)
    passed, *_ = verify_mod._check_hermite_contour()
    assert not passed


def test_cli_density_and_exit_codes(tmp_path, capsys):
    out = tmp_path / "d.csv"
    code = main([
        "density", "--model", "shifted-gue", "--n", "8", "--r", "2", "--c", "2.0",
        "--grid=-7:9:101", "--out", str(out),
    ])
    assert code == 0 and out.exists()
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass_flags"]["grid_covers_support"]
    # config error: missing --m for spiked-lue
    code = main([
        "density", "--model", "spiked-lue", "--grid", "0:10:11", "--out", str(tmp_path / "x.csv"),
    ])
    assert code == 2


def test_cli_mc_and_scan(tmp_path, capsys):
    out = tmp_path / "mc.csv"
    code = main([
        "mc", "--model", "shifted-gue", "--n", "6", "--r", "1", "--c", "1.0",
        "--grid=-6:8:41", "--trials", "60", "--seed", "3", "--out", str(out),
    ])
    assert code == 0 and out.exists()
    capsys.readouterr()
    scan_out = tmp_path / "scan.json"
    code = main([
        "scan", "--model", "shifted-gue", "--n", "40", "--r", "1",
        "--grid", "7:17:201", "--spikes", "0,2.2", "--out", str(scan_out),
    ])
    assert code == 0
    payload = json.loads(scan_out.read_text())
    assert payload["2.2"]["pass_flags"]["peak_found"]


def test_cli_figure_smoke(tmp_path, capsys):
    code = main(["figure", "fig3", "--outdir", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "fig3a.csv").exists()
    assert (tmp_path / "fig3b.svg").exists()


def test_all_figure_presets_emit_csv_and_svg(tmp_path):
    from spikesep.harness.figures import run_figure

    # fig1 with a reduced trial count; the rest at their full settings
    results = {"fig1": run_figure("fig1", tmp_path, trials=3000)}
    for name in ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7"):
        results[name] = run_figure(name, tmp_path)
    for name, res in results.items():
        suffixes = {p.suffix for p in res["files"]}
        assert ".csv" in suffixes and ".svg" in suffixes, name
        for p in res["files"]:
            assert p.exists() and p.stat().st_size > 0


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(1.0, 0.0, 10)
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, 1)
    with pytest.raises(ValueError):
        ExperimentConfig(kind="bogus", model=ShiftedGUE(4, 1, 1.0), grid=GridSpec(0, 1, 5))
