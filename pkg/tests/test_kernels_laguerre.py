import math

import numpy as np
import pytest
from scipy.special import eval_genlaguerre, gammaln

from spikesep.kernels import (
    SpikedLUE,
    density_spiked_lue,
    incomplete_laguerre,
    kernel_laguerre,
    kernel_spiked_lue,
)
from spikesep.kernels.contour import (
    contour_incomplete_laguerre_plain,
    contour_incomplete_laguerre_tilde,
)


def _gl(lo, hi, n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (hi - lo) * x + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


def test_kernel_laguerre_diagonal_value():
    # n=1, a=0 diagonal: e^{-y}; at 0.3 -> 0.740818
    assert kernel_laguerre(1, 0.0, 0.3, 0.3) == pytest.approx(math.exp(-0.3), rel=1e-13)
    assert kernel_laguerre(1, 0.0, 0.3, 0.3) == pytest.approx(0.740818, abs=1e-6)


def test_kernel_laguerre_trace():
    n, a = 6, 0.5
    us, ws = _gl(1e-8, 8.0, 500)
    tr = float(np.sum(2 * us * ws * np.array([kernel_laguerre(n, a, u * u, u * u) for u in us])))
    assert abs(tr - n) < 1e-8


def test_kernel_laguerre_reproducing():
    n, a = 5, 2.0
    x, y = 1.3, 4.2
    us, ws = _gl(1e-8, 8.0, 500)
    ts = us * us
    lhs = float(np.sum(2 * us * ws * np.array(
        [kernel_laguerre(n, a, x, t) * kernel_laguerre(n, a, t, y) for t in ts])))
    assert abs(lhs - kernel_laguerre(n, a, x, y)) < 1e-8


def test_incomplete_laguerre_tilde_printed_form():
    # j = 1, r = 1: e^{-x(bt-1)} bt^{m+a}/(bt-1)^{m-1}
    #               - sum_p L^{a+p+2}_{m-2-p}(x) / (bt-1)^{p+1}
    m, a, bt, x = 5, 1.0, 0.5, 2.0
    got = incomplete_laguerre("tilde", 1, x, m, a, 1, bt).to_float()
    eps = bt - 1.0
    acc = math.exp(-x * eps) * bt ** (m + a) / eps ** (m - 1)
    for p in range(m - 1):
        acc -= float(eval_genlaguerre(m - 2 - p, a + p + 2, x)) / eps ** (p + 1)
    assert got == pytest.approx(acc, rel=1e-12)


def test_incomplete_laguerre_plain_corrected_ratio():
    # Lambda_1(x) = x^a e^{-x} L^a_{m-1}(x) Gamma(m)/Gamma(m+a): the ratio the
    # defining contour integral gives (and the one that satisfies
    # biorthonormality); the printed closed form has it inverted
    m, a, r, bt = 6, 2.0, 1, 0.7
    x = 1.3
    got = incomplete_laguerre("plain", 1, x, m, a, r, bt).to_float()
    expect = x**a * math.exp(-x) * float(eval_genlaguerre(m - 1, a, x)) * math.exp(
        gammaln(m) - gammaln(m + a)
    )
    assert got == pytest.approx(expect, rel=1e-12)
    assert got == pytest.approx(
        contour_incomplete_laguerre_plain(1, x, m, int(a), r, bt), rel=1e-9
    )


@pytest.mark.parametrize(
    "params", [(5, 1.0, 1, 0.5), (6, 1.0, 2, 0.4), (6, 2.0, 2, 1.8), (7, 0.5, 3, 0.6)]
)
def test_incomplete_laguerre_vs_contour_oracle(params):
    m, a, r, bt = params
    for j in range(1, r + 1):
        for x in (0.5, 2.0, 6.0):
            ct = incomplete_laguerre("tilde", j, x, m, a, r, bt).to_float()
            ot = contour_incomplete_laguerre_tilde(j, x, m, a, r, bt)
            assert ct == pytest.approx(ot, rel=1e-8)
            if a == int(a):
                cp = incomplete_laguerre("plain", j, x, m, a, r, bt).to_float()
                op = contour_incomplete_laguerre_plain(j, x, m, a, r, bt)
                assert cp == pytest.approx(op, rel=1e-8)


def test_biorthogonality_incomplete_laguerre():
    m, a, r, bt = 6, 1.0, 2, 0.4
    us, ws = _gl(1e-8, 11.5, 1100)
    ts = us * us
    jac = 2.0 * us * ws
    for j in (1, 2):
        ft = np.array([incomplete_laguerre("tilde", j, t, m, a, r, bt).to_float() for t in ts])
        for k in (1, 2):
            fp = np.array([incomplete_laguerre("plain", k, t, m, a, r, bt).to_float() for t in ts])
            val = float(np.sum(jac * ft * fp))
            assert abs(val - (1.0 if j == k else 0.0)) < 1e-6


def test_btilde_to_one_limit():
    model_lo = SpikedLUE(6, 1.0, 2, 1.0 - 1e-6)
    model_hi = SpikedLUE(6, 1.0, 2, 1.0 + 1e-6)
    for x in (0.5, 3.0, 12.0):
        unspiked = kernel_laguerre(6, 1.0, x, x)
        assert density_spiked_lue(model_lo, x) == pytest.approx(unspiked, rel=1e-4)
        assert density_spiked_lue(model_hi, x) == pytest.approx(unspiked, rel=1e-4)


def test_branch_crossover_continuity():
    m, a, r = 6, 1.0, 2
    for j in (1, 2):
        for x in (0.8, 5.0):
            lo = incomplete_laguerre("tilde", j, x, m, a, r, 1.0 - 0.0199).to_float()
            hi = incomplete_laguerre("tilde", j, x, m, a, r, 1.0 - 0.0201).to_float()
            assert lo == pytest.approx(hi, rel=2e-2)


def test_density_trace_two_lobes():
    from scipy.integrate import simpson

    model = SpikedLUE(10, 0.5, 3, 0.05)
    u = np.linspace(1e-4, 7.0, 4001) ** 2
    t1 = simpson(density_spiked_lue(model, u) * 2 * np.sqrt(u), x=np.sqrt(u))
    xs2 = np.linspace(49.0, 900.0, 14001)
    t2 = simpson(density_spiked_lue(model, xs2), x=xs2)
    assert abs(t1 + t2 - 10.0) < 1e-6


def test_spike_lobe_matches_scaled_lue():
    # detached lobe vs r x r LUE with lambda -> btilde*lambda, a -> a + (m-r)
    model = SpikedLUE(10, 0.5, 3, 0.05)
    g = np.linspace(80.0, 700.0, 1901)
    full = density_spiked_lue(model, g)
    cmp_ = 0.05 * np.array([kernel_laguerre(3, 7.5, 0.05 * x, 0.05 * x) for x in g])
    a = full / np.trapezoid(full, g)
    b = cmp_ / np.trapezoid(cmp_, g)
    assert float(np.trapezoid(np.abs(a - b), g)) < 0.05


def test_large_btilde_bulk_matches_shifted_parameter():
    # btilde -> infinity: bulk matches (m-r) LUE with a -> a + r
    model = SpikedLUE(20, 3.0, 5, 100.0)
    g = np.linspace(1.0, 95.0, 1001)
    full = density_spiked_lue(model, g)
    cmp_ = np.array([kernel_laguerre(15, 8.0, x, x) for x in g])
    a = full / np.trapezoid(full, g)
    b = cmp_ / np.trapezoid(cmp_, g)
    assert float(np.trapezoid(np.abs(a - b), g)) < 0.05


def test_kernel_projection_spiked():
    model = SpikedLUE(5, 1.0, 2, 0.4)
    us, ws = _gl(1e-8, 10.5, 900)
    ts = us * us
    for (x, y) in [(0.7, 3.1), (2.0, 6.5)]:
        kxt = np.array([kernel_spiked_lue(model, x, t) for t in ts])
        kty = np.array([kernel_spiked_lue(model, t, y) for t in ts])
        lhs = float(np.sum(2.0 * us * ws * kxt * kty))
        assert abs(lhs - kernel_spiked_lue(model, x, y)) < 1e-6


def test_invalid_models():
    with pytest.raises(ValueError):
        SpikedLUE(5, -1.5, 1, 0.5)
    with pytest.raises(ValueError):
        SpikedLUE(5, 1.0, 6, 0.5)
    with pytest.raises(ValueError):
        SpikedLUE(5, 1.0, 1, 0.0)
