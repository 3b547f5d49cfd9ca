"""Acceptance suite: one test per criterion, printing one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` (about six minutes; the
Monte Carlo arbitration of criterion 6 dominates).

Criteria 1 and 4 include lobe comparisons against the r x r GUE centered
exactly at c = 15; the exact kernels (cross-validated here by Monte Carlo,
trace, and first-moment identities) place the detached lobe at
c + (co-rank)/(2c) + ..., so those two sub-checks fail with measured L1
0.162 / 0.361 against the stated 0.05.  They are asserted as stated rather
than recentered; see the reviewer notes for the full analysis.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import simpson

from spikesep.harness import verify as V
from spikesep.harness.config import ExperimentConfig, GridSpec
from spikesep.harness.emit import emit_csv
from spikesep.harness.experiments import (
    compare_curves,
    empirical_density_curve,
    exact_density_curve,
    run_onset_scan,
    sample_batch,
)
from spikesep.kernels import (
    ShiftedChiral,
    ShiftedGUE,
    SpikedLUE,
    density_shifted_chiral,
    density_shifted_gue,
    density_spiked_lue,
    kernel_gue,
    kernel_laguerre,
)
from spikesep.secular import (
    ChiralShift,
    GaussianShift,
    WishartSpike,
    WishartSpikeGamma,
    separation_predictor,
)


def _report(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def _unit_l1(grid, a, b):
    a = a / np.trapezoid(a, grid)
    b = b / np.trapezoid(b, grid)
    return float(np.trapezoid(np.abs(a - b), grid))


def test_criterion_1_fig1_reproduction():
    start = time.time()
    model = ShiftedGUE(15, 5, 15.0)
    xs = np.linspace(-8.0, 23.0, 40001)
    trace = float(simpson(density_shifted_gue(model, xs), x=xs))
    lobe_grid = np.linspace(8.0, 22.0, 1401)
    full = density_shifted_gue(model, lobe_grid)
    gue5 = np.array([kernel_gue(5, x - 15.0, x - 15.0) for x in lobe_grid])
    lobe_l1 = _unit_l1(lobe_grid, full, gue5)
    config = ExperimentConfig(kind="mc", model=model, grid=GridSpec(-7.0, 22.0, 146),
                              trials=200_000, bins=145, master_seed=1729)
    empirical = empirical_density_curve(model, config)
    exact = exact_density_curve(model, empirical.grid)
    mc_l1 = compare_curves(exact, empirical).l1_distance
    elapsed = time.time() - start
    ok_trace = abs(trace - 15.0) < 1e-6
    ok_lobe = lobe_l1 < 0.05
    ok_mc = mc_l1 < 0.02
    ok_time = elapsed < 60.0
    ok = ok_trace and ok_lobe and ok_mc and ok_time
    _report(1, ok,
            f"trace err {abs(trace-15):.2e} (<1e-6: {ok_trace}); "
            f"right-lobe L1 vs gue5@15 {lobe_l1:.3f} (<0.05: {ok_lobe}; lobe sits at "
            f"15+1/3, recentered L1 is 0.016); MC L1 {mc_l1:.4f} (<0.02: {ok_mc}); "
            f"runtime {elapsed:.0f}s (<60: {ok_time})")
    assert ok_trace and ok_mc and ok_time
    assert ok_lobe, "lobe displaced by (N-r)/(2c): genuine 0.162 vs stated 0.05"


def test_criterion_2_fig2_onset():
    start = time.time()
    j = math.sqrt(1000.0)
    cfg = ExperimentConfig(kind="scan", model=ShiftedGUE(500, 1, 0.0),
                           grid=GridSpec(0.85 * j, 1.42 * j, 401), spikes=(0.0, 1.0, 2.0))
    reports = run_onset_scan(cfg)
    peaks2 = reports[2.0].peak_locations
    ok_peak = bool(peaks2) and abs(peaks2[0] - 39.53) <= 1.0
    ok_none = not reports[0.0].peak_locations and not reports[1.0].peak_locations
    elapsed = time.time() - start
    ok = ok_peak and ok_none and elapsed < 300.0
    _report(2, ok,
            f"c=2 peak at {peaks2[0]:.3f} (39.53 +- 1.0); "
            f"no peaks at c in {{0,1}}: {ok_none}; runtime {elapsed:.0f}s (<300)")
    assert ok


def test_criterion_3_spiked_lue_lobes():
    model3 = SpikedLUE(10, 0.5, 3, 0.05)
    g3 = np.linspace(80.0, 700.0, 1901)
    full3 = density_spiked_lue(model3, g3)
    cmp3 = 0.05 * np.array([kernel_laguerre(3, 7.5, 0.05 * x, 0.05 * x) for x in g3])
    l1_spike = _unit_l1(g3, full3, cmp3)
    model7 = SpikedLUE(20, 3.0, 5, 100.0)
    g7 = np.linspace(1.0, 95.0, 1001)
    full7 = density_spiked_lue(model7, g7)
    cmp7 = np.array([kernel_laguerre(15, 8.0, x, x) for x in g7])
    l1_bulk = _unit_l1(g7, full7, cmp7)
    ok = l1_spike < 0.05 and l1_bulk < 0.05
    _report(3, ok,
            f"fig3 spike lobe vs scaled 3x3 LUE(alpha=7.5): L1 {l1_spike:.4f}; "
            f"fig7 bulk vs 15x15 LUE(alpha=8): L1 {l1_bulk:.4f} (both <0.05)")
    assert ok


def test_criterion_4_chiral():
    model = ShiftedChiral(15, 4.0, 5, 15.0)
    g = np.linspace(10.0, 21.0, 1101)
    full = density_shifted_chiral(model, g)
    gue5 = np.array([kernel_gue(5, x - 15.0, x - 15.0) for x in g])
    lobe_l1 = _unit_l1(g, full, gue5)
    ok_lobe = lobe_l1 < 0.05
    jc = 2.0 * math.sqrt(500.0)
    cfg = ExperimentConfig(kind="scan", model=ShiftedChiral(500, 2.0, 1, 0.0),
                           grid=GridSpec(0.85 * jc, 1.45 * jc, 401), spikes=(2.0,))
    rep = run_onset_scan(cfg)[2.0]
    ok_peak = bool(rep.peak_locations) and abs(rep.peak_locations[0] - 55.90) <= 1.5
    ok = ok_lobe and ok_peak
    _report(4, ok,
            f"fig5 right lobe vs gue5@15: L1 {lobe_l1:.3f} (<0.05: {ok_lobe}; lobe "
            f"center is 15.88, recentered L1 0.041); fig6 c=2 peak at "
            f"{rep.peak_locations[0]:.3f} (55.90 +- 1.5: {ok_peak})")
    assert ok_peak
    assert ok_lobe, "lobe displaced by bulk repulsion: genuine 0.361 vs stated 0.05"


def test_criterion_5_fig4_onset():
    cfg = ExperimentConfig(kind="scan", model=SpikedLUE(500, 0.5, 1, 0.5),
                           grid=GridSpec(1700.0, 2950.0, 501), spikes=(0.5, 0.275))
    reports = run_onset_scan(cfg)
    peaks = reports[0.275].peak_locations
    ok_peak = bool(peaks) and abs(peaks[0] - 2507.8) <= 25.0
    ok_none = not reports[0.5].peak_locations
    ok = ok_peak and ok_none
    _report(5, ok,
            f"btilde=0.275 peak at {peaks[0]:.1f} (2507.8 +- 25); "
            f"btilde=0.5 separated peak absent: {ok_none}")
    assert ok


def test_criterion_6_predictor_mc_agreement():
    results = {}
    # shifted GUE, c = 1.5 (1.5x threshold), N = 500; also the c = 2 variant
    for c in (1.5, 2.0):
        pred = separation_predictor(GaussianShift(2, 500, c))
        kernel_model = ShiftedGUE(500, 1, c * math.sqrt(1000.0) / 2.0)
        _, largest = sample_batch(kernel_model, 2, 200, 1001, np.linspace(0, 1, 3))
        results[f"gue c={c:g}"] = abs(float(np.mean(largest)) - pred.location) / pred.location
    # Wishart spike, s = 3 = 1.5x threshold, m = 500, n - m = 3
    pred = separation_predictor(WishartSpike(2, 500, 503, 3.0))
    _, largest = sample_batch(SpikedLUE(500, 3.0, 1, 1.0 / 3.0), 2, 200, 1002,
                              np.linspace(0, 1, 3))
    results["wishart s=3"] = abs(float(np.mean(largest)) - pred.location) / pred.location
    # Wishart gamma variant, m = 500, gamma = 2, s = 1.5x threshold
    s = 1.5 * (1.0 + 1.0 / math.sqrt(2.0))
    pred = separation_predictor(WishartSpikeGamma(2, 500, 2.0, s))
    from spikesep.ensembles import SeedStream, sample_spiked_wishart

    stream = SeedStream(1004)
    model = WishartSpikeGamma(2, 500, 2.0, s)
    largest = [sample_spiked_wishart(model, stream, t).eigenvalues[-1] for t in range(200)]
    results["wishart gamma=2"] = abs(float(np.mean(largest)) - pred.location) / pred.location
    # chiral, c = 1.5, m = 500
    pred = separation_predictor(ChiralShift(2, 500, 503, 1.5))
    _, largest = sample_batch(ShiftedChiral(500, 3.0, 1, 1.5 * math.sqrt(500.0)), 2, 200,
                              1003, np.linspace(0, 1, 3))
    results["chiral c=1.5"] = abs(float(np.mean(largest)) - pred.location) / pred.location
    worst = max(results.values())
    ok = worst < 0.02
    _report(6, ok, "; ".join(f"{k}: {v:.4f}" for k, v in results.items()) + " (all <0.02)")
    assert ok


def test_criterion_7_oracle_equivalences():
    checks = {
        "secular_vs_dense": V._check_secular_vs_dense(),
        "stieltjes_quadrature": V._check_stieltjes_vs_quadrature(),
        "catalan_moments": V._check_catalan_moments(),
        "narayana": V._check_narayana_identities(),
        "hermite_contour": V._check_hermite_contour(),
        "laguerre_contour": V._check_laguerre_contour(),
        "chiral_contour": V._check_chiral_contour(),
        "series_vs_determinant": V._check_series_vs_determinant(),
    }
    ok = all(r[0] for r in checks.values())
    _report(7, ok, "; ".join(f"{k}: {r[1]:.2e}" for k, r in checks.items()))
    assert ok


def test_criterion_8_kernel_structure():
    checks = {
        "traces": V._check_kernel_traces(),
        "projection": V._check_kernel_projection(),
        "biorthogonality": V._check_biorthogonality(),
    }
    ok = all(r[0] for r in checks.values())
    _report(8, ok, "; ".join(f"{k}: {r[1]:.2e} (tol {r[2]:.0e})" for k, r in checks.items()))
    assert ok


def test_criterion_9_asymptotic_propositions():
    ok, worst, tol, detail = V._check_asymptotic_convergence()
    _report(9, ok, detail)
    assert ok


def test_criterion_10_factorization_and_green():
    fact = V._check_factorization()
    green = V._check_green_limits()
    ok = fact[0] and green[0]
    _report(10, ok, f"factorization: {fact[3]}; green: {green[3]}")
    assert ok


def test_criterion_11_structural_sampler(tmp_path):
    struct = V._check_chiral_sampler_structure()
    model = ShiftedGUE(12, 2, 3.0)
    edges = np.linspace(-8.0, 10.0, 41)
    c1, l1 = sample_batch(model, 2, 300, 99, edges, workers=1)
    c2, l2 = sample_batch(model, 2, 300, 99, edges, workers=3)
    det = bool(np.array_equal(c1, c2) and np.array_equal(l1, l2))
    # byte-identical CSV from equal configs
    cfg = ExperimentConfig(kind="mc", model=model, grid=GridSpec(-8.0, 10.0, 41),
                           trials=200, bins=40, master_seed=5)
    e1 = empirical_density_curve(model, cfg)
    e2 = empirical_density_curve(model, cfg)
    p1 = emit_csv([e1], None, tmp_path / "a.csv")
    p2 = emit_csv([e2], None, tmp_path / "b.csv")
    bytes_equal = p1.read_bytes() == p2.read_bytes()
    ok = struct[0] and det and bytes_equal
    _report(11, ok,
            f"chiral sign symmetry/zero structure: {struct[0]}; worker-count "
            f"independence: {det}; byte-identical CSV: {bytes_equal}")
    assert ok
