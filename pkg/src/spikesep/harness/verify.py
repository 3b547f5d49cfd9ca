"""Machine-checkable cross-validation suite.

Every closed form that has an independent oracle (dense eigensolver,
quadrature, contour integral, partition series, Monte Carlo) is re-derived
here and compared at an explicit tolerance.  `run_verify` returns a
JSON-serializable report; any failed check gives a nonzero exit through the
CLI.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .. import jointpdf, spectra
from ..ensembles import SeedStream, eigensolver_residual, sample_shifted_chiral
from ..kernels import (
    ShiftedChiral,
    ShiftedGUE,
    SpikedLUE,
    chiral_asymptotic_pq,
    chiral_pq,
    chiral_spike_term,
    correl_n,
    density_shifted_chiral,
    density_shifted_gue,
    density_spiked_lue,
    incomplete_hermite,
    incomplete_laguerre,
    kernel_shifted_chiral,
    kernel_shifted_gue,
    kernel_shifted_gue_asymptotic,
    kernel_spiked_lue,
    spike_term_shifted_gue,
)
from ..kernels.contour import (
    contour_chiral_q,
    contour_incomplete_hermite_plain,
    contour_incomplete_hermite_tilde,
    contour_incomplete_laguerre_plain,
    contour_incomplete_laguerre_tilde,
)
from ..secular import (
    ChiralShift,
    GaussianShift,
    SecularProblem,
    WishartSpike,
    WishartSpikeGamma,
    chiral_secular_eigenvalues,
    secular_eigenvalues,
    separation_predictor,
)
from ..specialfn import (
    catalan,
    hermite_weighted,
    laguerre_weighted,
    narayana,
    narayana_generating_closed_form,
    narayana_polynomial,
)
from .experiments import sample_batch

__all__ = ["run_verify", "CheckResult", "SUITES"]


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


def _gl_nodes(lo, hi, n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (hi - lo) * x + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


# ---------------------------------------------------------------------------
# specialfn

def _check_hermite_orthonormality():
    xs, ws = _gl_nodes(-14.0, 14.0, 400)
    psi = np.array([hermite_weighted(20, x) for x in xs])  # (nodes, 20)
    gram = (psi * ws[:, None]).T @ psi
    err = float(np.max(np.abs(gram - np.eye(20))))
    return err < 1e-8, err, 1e-8, "Gauss-Legendre Gram matrix, orders < 20"


def _check_laguerre_orthonormality():
    worst = 0.0
    for a in (0.0, 0.5, 3.0):
        us, ws = _gl_nodes(1e-9, 11.0, 400)  # x = u^2 substitution
        phi = np.array([laguerre_weighted(20, a, u * u) for u in us])
        gram = (phi * (2.0 * us * ws)[:, None]).T @ phi
        worst = max(worst, float(np.max(np.abs(gram - np.eye(20)))))
    return worst < 1e-8, worst, 1e-8, "a in {0, 0.5, 3}, x=u^2 substitution"


def _check_catalan_moments():
    worst = 0.0
    law = spectra.Semicircle(7)
    j = law.edge
    xs, ws = _gl_nodes(-0.5 * math.pi, 0.5 * math.pi, 600)
    for k in range(0, 9):
        quad = float(np.sum(ws * (j * np.sin(xs)) ** (2 * k)
                            * spectra.density(law, j * np.sin(xs)) * j * np.cos(xs)))
        closed = spectra.moment(law, 2 * k)
        worst = max(worst, abs(quad - closed) / abs(closed))
    return worst < 1e-8, worst, 1e-8, "semicircle even moments k <= 8 vs quadrature"


def _check_narayana_identities():
    worst = 0.0
    for k in range(1, 21):
        row = sum(narayana(k, jj) for jj in range(k))
        if row != catalan(k):
            return False, float(k), 0.0, f"row sum mismatch at k={k}"
    # generating function at p=q=1, t=0.1
    closed = narayana_generating_closed_form(1.0, 1.0, 0.1)
    series = sum(narayana_polynomial(k, 1.0, 1.0) * 0.1 ** (k + 1) for k in range(1, 40))
    rel = abs(closed - series) / abs(closed)
    worst = max(worst, rel)
    return worst < 1e-12, worst, 1e-12, "row sums k <= 20 exact; generating function at t=0.1"


# ---------------------------------------------------------------------------
# spectra

def _stieltjes_quadrature(law, z, nodes=3000):
    lo, hi = spectra.support(law)
    if isinstance(law, spectra.Semicircle):
        th, w = _gl_nodes(-0.5 * math.pi, 0.5 * math.pi, nodes)
        x = law.edge * np.sin(th)
        jac = law.edge * np.cos(th)
    else:
        th, w = _gl_nodes(0.0, math.pi, nodes)
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        x = mid + half * np.cos(th)
        jac = half * np.sin(th)
    dens = spectra.density(law, x)
    val = float(np.sum(w * dens * jac / (z - x)))
    _, weight = spectra.point_mass(law)
    return val + weight / z


def _check_stieltjes_vs_quadrature():
    worst = 0.0
    for law in (spectra.Semicircle(9), spectra.MarchenkoPasturFixedDiff(6),
                spectra.MarchenkoPasturGamma(2.5)):
        _, hi = spectra.support(law)
        for f in (1.05, 1.5, 3.0):
            z = f * hi
            closed = spectra.stieltjes(law, z)
            quad = _stieltjes_quadrature(law, z)
            worst = max(worst, abs(closed - quad) / abs(closed))
    return worst < 1e-10, worst, 1e-10, "3 laws x 3 evaluation points"


def _check_moment_duality():
    worst = 0.0
    for law in (spectra.Semicircle(5), spectra.MarchenkoPasturFixedDiff(4),
                spectra.MarchenkoPasturGamma(1.8)):
        _, hi = spectra.support(law)
        z = 2.0 * hi
        if isinstance(law, spectra.MarchenkoPasturGamma):
            _, pm = spectra.point_mass(law)
            series = pm / z + sum(
                (spectra.moment(law, k) / law.gamma if k else 1.0 / law.gamma) / z ** (k + 1)
                for k in range(41)
            )
        else:
            series = sum(spectra.moment(law, k) / z ** (k + 1) for k in range(41))
        closed = spectra.stieltjes(law, z)
        worst = max(worst, abs(series - closed) / abs(closed))
    return worst < 1e-8, worst, 1e-8, "moment series vs closed form at z = 2x edge"


# ---------------------------------------------------------------------------
# secular

def _check_secular_vs_dense():
    rng = np.random.default_rng(42)
    worst = 0.0
    for trial in range(200):
        n = int(rng.integers(2, 51))
        mu = float(rng.choice([0.1, 1.0, 10.0]))
        diag = np.sort(rng.normal(0, 3, n))[::-1]
        w = rng.normal(size=n) ** 2
        lam = secular_eigenvalues(SecularProblem(diag, w, mu))
        mat = np.diag(diag) + mu * np.outer(np.sqrt(w), np.sqrt(w))
        ref = np.linalg.eigvalsh(mat)[::-1]
        scale = max(np.max(np.abs(ref)), 1.0)
        worst = max(worst, float(np.max(np.abs(lam - ref)) / scale))
    return worst < 1e-9, worst, 1e-9, "200 random instances, N <= 50"


def _check_interlacing():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(2, 21))
        diag = np.sort(rng.normal(0, 2, n))[::-1]
        w = rng.normal(size=n) ** 2 + 1e-3
        mu = 0.7
        lam = secular_eigenvalues(SecularProblem(diag, w, mu))
        if not (np.all(lam[:-1] > diag[:-1]) and np.all(lam[1:] < diag[:-1]) and lam[-1] > diag[-1]):
            return False, 1.0, 0.0, "interlacing violated"
    return True, 0.0, 0.0, "50 random instances"


def _check_chiral_secular_oracle():
    worst = 0.0
    rng = np.random.default_rng(3)
    for _ in range(20):
        xval = complex(rng.normal(), rng.normal())
        mu = float(rng.uniform(0.1, 2.0))
        u = np.array([xval / (math.sqrt(2.0) * abs(xval))])
        v = np.array([1.0 / math.sqrt(2.0)])
        roots = chiral_secular_eigenvalues([abs(xval)], u, v, mu, n=1)
        truth = abs(xval + mu)
        worst = max(worst, abs(roots[0] - truth) / truth)
    return worst < 1e-10, worst, 1e-10, "m=n=1 vs |x + mu| eigendecomposition"


def _check_chiral_averaged_interlacing():
    rng = np.random.default_rng(11)
    sing = np.sort(rng.uniform(0.5, 6.0, 5))
    roots = chiral_secular_eigenvalues(sing, mu=0.8, n=7)
    ok = np.all(roots[:-1] > sing[:-1]) and np.all(roots[:-1] < sing[1:]) and roots[-1] > sing[-1]
    return bool(ok), 0.0 if ok else 1.0, 0.0, "averaged mode, m=5"


def _check_predictor_consistency():
    worst = 0.0
    for s in (2.1, 3.0, 4.0, 10.0):
        a = separation_predictor(WishartSpike(2, 500, 503, s)).location
        b = separation_predictor(WishartSpikeGamma(2, 500, 1.0, s)).location
        worst = max(worst, abs(a - b) / a)
    gs = separation_predictor(GaussianShift(2, 500, 2.0)).location
    worst = max(worst, abs(gs - 39.528470752104741) / 39.528470752104741)
    ws = separation_predictor(WishartSpike(2, 500, 503, 4.0)).location
    worst = max(worst, abs(ws - 500 * 16.0 / 3.0) / ws)
    at_threshold = separation_predictor(WishartSpike(2, 500, 503, 2.0))
    if at_threshold.above_threshold:
        return False, 1.0, 0.0, "threshold case must not separate"
    return worst < 1e-12, worst, 1e-12, "gamma=1 agreement and closed-form locations"


# ---------------------------------------------------------------------------
# ensembles

def _check_determinism():
    model = ShiftedGUE(12, 2, 3.0)
    edges = np.linspace(-8.0, 10.0, 41)
    c1, l1 = sample_batch(model, 2, 200, 99, edges, workers=1)
    c2, l2 = sample_batch(model, 2, 200, 99, edges, workers=3)
    same = np.array_equal(c1, c2) and np.array_equal(l1, l2)
    return bool(same), 0.0 if same else 1.0, 0.0, "1 vs 3 workers, bitwise-equal results"


def _check_eigensolver_residual():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(20):
        a = rng.normal(size=(100, 100)) + 1j * rng.normal(size=(100, 100))
        a = a + a.conj().T
        worst = max(worst, eigensolver_residual(a))
    return worst < 1e-10, worst, 1e-10, "20 random Hermitian matrices, dim 100"


def _check_chiral_sampler_structure():
    stream = SeedStream(17)
    model = ChiralShift(2, 12, 15, 4.0, r=3)
    ok = True
    for t in range(10):
        s = sample_shifted_chiral(model, [4.0] * 3, stream, t)
        eig = s.eigenvalues
        scale = np.max(np.abs(eig))
        sym = np.max(np.abs(eig + eig[::-1]))
        zeros = np.sum(np.abs(eig) < 1e-8 * scale)
        ok = ok and sym < 1e-8 * scale and zeros >= model.n - model.m
    return bool(ok), 0.0 if ok else 1.0, 0.0, "sign symmetry and zero count, 10 trials"


def _check_wishart_trace_mc():
    model = WishartSpike(2, 30, 33, 4.0, r=2)
    stream = SeedStream(23)
    from ..ensembles import sample_spiked_wishart

    trials = 3000
    traces = np.array([
        float(np.sum(sample_spiked_wishart(model, stream, t).eigenvalues)) for t in range(trials)
    ])
    expected = 33 * (30 - 2) + 33 * 2 * 4.0
    se = float(np.std(traces, ddof=1) / math.sqrt(trials))
    dev = abs(float(np.mean(traces)) - expected)
    return dev < 3 * se, dev / se, 3.0, f"E[Tr] = {expected}, measured within {dev/se:.2f} SE"


# ---------------------------------------------------------------------------
# kernels

def _check_hermite_contour():
    worst = 0.0
    for (n, r, c) in [(6, 1, 2.0), (8, 3, 2.0), (8, 2, 1.0), (6, 2, 0.35)]:
        for j in range(1, r + 1):
            for x in (0.7, -1.3, 2.5):
                ct = incomplete_hermite("tilde", j, x, n, r, c).to_float()
                ot = contour_incomplete_hermite_tilde(j, x, n, r, c)
                cp = incomplete_hermite("plain", j, x, n, r, c).to_float()
                op = contour_incomplete_hermite_plain(j, x, n, r, c)
                worst = max(worst, abs(ct - ot) / abs(ot), abs(cp - op) / abs(op))
    return worst < 1e-8, worst, 1e-8, "j <= 3, N <= 8, c <= 2, both families"


def _check_laguerre_contour():
    worst = 0.0
    for (m, a, r, bt) in [(5, 1.0, 1, 0.5), (6, 1.0, 2, 0.4), (6, 2.0, 2, 1.8)]:
        for j in range(1, r + 1):
            for x in (0.5, 2.0, 6.0):
                ct = incomplete_laguerre("tilde", j, x, m, a, r, bt).to_float()
                ot = contour_incomplete_laguerre_tilde(j, x, m, a, r, bt)
                worst = max(worst, abs(ct - ot) / abs(ot))
                cp = incomplete_laguerre("plain", j, x, m, a, r, bt).to_float()
                op = contour_incomplete_laguerre_plain(j, x, m, a, r, bt)
                worst = max(worst, abs(cp - op) / abs(op))
    return worst < 1e-8, worst, 1e-8, "j <= 2, m <= 6, integer alpha, both families"


def _check_chiral_contour():
    worst = 0.0
    for (m, a, r, c) in [(6, 2.0, 2, 1.5), (5, 0.5, 1, 1.0)]:
        for k in range(1, r + 1):
            for x in (0.5, 2.0, 5.0):
                cq = chiral_pq("q", k, x, m, a, r, c).to_float()
                oq = contour_chiral_q(k, x, m, a, r, c)
                worst = max(worst, abs(cq - oq) / abs(oq))
    return worst < 1e-8, worst, 1e-8, "k <= 2, m <= 6, small c"


def _trace_gauss(model, lo, hi, nodes=1200):
    xs, ws = _gl_nodes(lo, hi, nodes)
    return float(np.sum(ws * density_shifted_gue(model, xs)))


def _check_kernel_traces():
    worst = 0.0
    model = ShiftedGUE(8, 2, 3.0)
    worst = max(worst, abs(_trace_gauss(model, -8.5, 11.5) - 8.0))
    lue = SpikedLUE(6, 1.0, 2, 0.4)
    us, ws = _gl_nodes(1e-6, 11.5, 1400)  # x = u^2; covers the detached lobe tail
    tr = float(np.sum(2.0 * us * ws * density_spiked_lue(lue, us * us)))
    worst = max(worst, abs(tr - 6.0))
    ch = ShiftedChiral(6, 2.0, 2, 3.0)
    xs, ws = _gl_nodes(1e-6, 10.5, 1000)
    tr = float(np.sum(ws * density_shifted_chiral(ch, xs)))
    worst = max(worst, abs(tr - 6.0))
    return worst < 1e-6, worst, 1e-6, "trace = dimension for the three families"


def _check_kernel_projection():
    rng = np.random.default_rng(19)
    worst = 0.0
    model = ShiftedGUE(6, 2, 2.0)
    xs, ws = _gl_nodes(-8.0, 9.0, 700)
    kt = {}
    for _ in range(5):
        x, y = rng.uniform(-2.0, 4.0, 2)
        kxt = np.array([kernel_shifted_gue(model, x, t) for t in xs])
        kty = np.array([kernel_shifted_gue(model, t, y) for t in xs])
        lhs = float(np.sum(ws * kxt * kty))
        rhs = kernel_shifted_gue(model, x, y)
        worst = max(worst, abs(lhs - rhs))
    lue = SpikedLUE(5, 1.0, 2, 0.4)
    us, ws = _gl_nodes(1e-6, 10.5, 900)
    ts = us * us
    for _ in range(5):
        x, y = rng.uniform(0.3, 8.0, 2)
        kxt = np.array([kernel_spiked_lue(lue, x, t) for t in ts])
        kty = np.array([kernel_spiked_lue(lue, t, y) for t in ts])
        lhs = float(np.sum(2.0 * us * ws * kxt * kty))
        rhs = kernel_spiked_lue(lue, x, y)
        worst = max(worst, abs(lhs - rhs))
    ch = ShiftedChiral(5, 1.0, 2, 2.0)
    us, ws = _gl_nodes(1e-6, 9.0, 700)
    for _ in range(5):
        x, y = rng.uniform(0.5, 4.0, 2)
        kxt = np.array([kernel_shifted_chiral(ch, x, t) for t in us])
        kty = np.array([kernel_shifted_chiral(ch, t, y) for t in us])
        lhs = float(np.sum(2.0 * us * ws * kxt * kty))
        rhs = kernel_shifted_chiral(ch, x, y)
        worst = max(worst, abs(lhs - rhs))
    return worst < 1e-6, worst, 1e-6, "int K(x,t)K(t,y) dt = K(x,y), 5 pairs per family"


def _check_biorthogonality():
    worst = 0.0
    n, r, c = 7, 2, 1.5
    xs, ws = _gl_nodes(-9.0, 9.0, 800)
    fams = [
        [np.array([incomplete_hermite("tilde", j, x, n, r, c).to_float() for x in xs]) for j in (1, 2)],
        [np.array([incomplete_hermite("plain", j, x, n, r, c).to_float() for x in xs]) for j in (1, 2)],
    ]
    for j in range(2):
        for k in range(2):
            val = float(np.sum(ws * fams[0][j] * fams[1][k]))
            worst = max(worst, abs(val - (1.0 if j == k else 0.0)))
    m, a, r, bt = 6, 1.0, 2, 0.4
    us, ws = _gl_nodes(1e-6, 11.5, 1100)
    ts = us * us
    jac = 2.0 * us * ws
    lt = [np.array([incomplete_laguerre("tilde", j, t, m, a, r, bt).to_float() for t in ts]) for j in (1, 2)]
    lp = [np.array([incomplete_laguerre("plain", j, t, m, a, r, bt).to_float() for t in ts]) for j in (1, 2)]
    for j in range(2):
        for k in range(2):
            val = float(np.sum(jac * lt[j] * lp[k]))
            worst = max(worst, abs(val - (1.0 if j == k else 0.0)))
    m, a, r, c = 6, 2.0, 2, 1.5
    ps = [np.array([chiral_pq("p", k, t, m, a, r, c).to_float() for t in ts]) for k in (1, 2)]
    qs = [np.array([chiral_pq("q", k, t, m, a, r, c).to_float() for t in ts]) for k in (1, 2)]
    for j in range(2):
        for k in range(2):
            val = float(np.sum(jac * ps[j] * qs[k]))
            worst = max(worst, abs(val - (1.0 if j == k else 0.0)))
    return worst < 1e-6, worst, 1e-6, "(Gtilde,Gamma), (Ltilde,Lambda), (p,q) pairs"


def _check_asymptotic_convergence():
    devs_g = []
    for c in (10.0, 15.0, 20.0, 30.0):
        ex = spike_term_shifted_gue(ShiftedGUE(4, 2, c), c, c)
        asym = kernel_shifted_gue_asymptotic(2, c, c, c)
        devs_g.append(abs(ex - asym) / abs(asym))
    devs_c = []
    for c in (10.0, 15.0, 20.0, 30.0):
        ex = chiral_spike_term(ShiftedChiral(4, 0.0, 3, c), c * c, c * c)
        asym = chiral_asymptotic_pq(3, c, c * c, c * c)
        devs_c.append(abs(ex - asym) / abs(asym))
    mono = all(devs_g[i + 1] < devs_g[i] for i in range(3)) and all(
        devs_c[i + 1] < devs_c[i] for i in range(3)
    )
    worst15 = max(devs_g[1], devs_c[1])
    ok = mono and worst15 < 2e-2
    return ok, worst15, 2e-2, f"deviation at c=15 (gue {devs_g[1]:.4f}, chiral {devs_c[1]:.4f}), monotone={mono}"


def _check_correl_symmetry():
    model = ShiftedGUE(6, 2, 2.0)
    pts = np.array([0.3, -1.1, 1.7])
    base = correl_n(model, pts)
    worst = 0.0
    import itertools as it

    for perm in it.permutations(range(3)):
        worst = max(worst, abs(correl_n(model, pts[list(perm)]) - base) / abs(base))
    return worst < 1e-12, worst, 1e-12, "3-point correlation under permutations"


# ---------------------------------------------------------------------------
# jointpdf

def _check_series_vs_determinant():
    worst = 0.0
    x2, y2 = np.array([0.1, 0.3]), np.array([0.2, 0.5])
    x3, y3 = np.array([0.1, 0.25, 0.4]), np.array([0.15, 0.3, 0.55])
    for (x, y) in [(x2, y2), (x3, y3)]:
        d = jointpdf.f00_unitary(x, y).to_float()
        s = jointpdf.series_f00(x, y, 10)
        worst = max(worst, abs(d - s) / abs(s))
        d = jointpdf.f01_unitary(4.5, x, y).to_float()
        s = jointpdf.series_f01(4.5, x, y, 10)
        worst = max(worst, abs(d - s) / abs(s))
    return worst < 1e-8, worst, 1e-8, "0F0/0F1 determinant vs partition series, N = 2, 3"


def _check_green_limits():
    # tau -> 0: the log-ratio to the sharp-front form, differenced across two
    # eigenvalue configurations, must converge (tau-only constants cancel in
    # the config difference; its limit is the smooth prefactor's log-ratio)
    lam_a = np.array([0.7, 1.4])
    lam_b = np.array([0.5, 1.9])
    lam0 = np.array([1.0, 1.0 + 1e-8])
    rr = []
    for tau in (1e-2, 1e-3, 1e-4):
        ratios = []
        for lam in (lam_a, lam_b):
            g = jointpdf.green_function("gaussian", jointpdf.EigenConfiguration(lam, lam0, tau))
            front = (-(0.5 / tau) * float(np.sum((np.sort(lam) - np.sort(lam0)) ** 2))
                     + 2.0 * math.log(abs(lam[1] - lam[0])))
            ratios.append(g.log_magnitude - front)
        rr.append(ratios[0] - ratios[1])
    drift = [abs(rr[1] - rr[0]), abs(rr[2] - rr[1])]
    ok_front = drift[1] < drift[0] and drift[1] < 1e-3
    # tau -> infinity: equilibrium on a grid (N = 2, well-separated source),
    # L1 after normalization
    sep_lam0 = np.array([0.5, 1.5])
    xs = np.linspace(-4.0, 4.0, 81)
    tau = 20.0
    vals = np.zeros((xs.size, xs.size))
    eq = np.zeros_like(vals)
    for i, a in enumerate(xs):
        for j, b in enumerate(xs):
            if b - a < 1e-3:
                continue
            lam = np.array([a, b])
            vals[i, j] = jointpdf.green_function(
                "gaussian", jointpdf.EigenConfiguration(lam, sep_lam0, tau)
            ).to_float()
            eq[i, j] = (b - a) ** 2 * math.exp(-(a * a + b * b))
    vals /= vals.sum()
    eq /= eq.sum()
    l1 = float(np.abs(vals - eq).sum())
    ok = ok_front and l1 < 1e-4
    return ok, l1, 1e-4, f"front log-ratio spreads {['%.2e' % d for d in drift]}, equilibrium L1 {l1:.2e}"


def _second_difference_spread(logs):
    arr = np.asarray(logs)
    return float(np.max(arr) - np.min(arr))


def _check_factorization():
    rng = np.random.default_rng(31)
    spreads = []
    # Gaussian shift: N=4, r=2, source eigenvalues (0,0,c,c), c = 10x bulk scale;
    # product form = two Gaussian blocks times the half-power cross factor
    c = 20.0
    logs = []
    for _ in range(10):
        bulk = np.sort(rng.uniform(-1.5, 1.5, 2))
        spike = np.sort(c + rng.uniform(-1.0, 1.0, 2))
        lam = np.concatenate([bulk, spike])
        lam0 = np.array([0.0, 1e-6, c, c + 2e-6])
        g = jointpdf.joint_pdf(GaussianShift(2, 4, c, 2), jointpdf.EigenConfiguration(lam, lam0))
        prod = (
            -float(np.sum((spike - c) ** 2))
            - float(np.sum(bulk**2))
            + 2.0 * math.log(abs(spike[1] - spike[0]))
            + 2.0 * math.log(abs(bulk[1] - bulk[0]))
            + float(np.sum([math.log(abs(s - b)) for s in spike for b in bulk]))
        )
        logs.append(g.log_magnitude - prod)
    spreads.append(_second_difference_spread(logs))
    # Wishart spike btilde -> 0 (covariance spike 1/btilde), m=4, r=2; the
    # stated product already carries the cross correction as lambda^{m-r}
    btilde = 0.02
    logs = []
    alpha = 1  # n - m
    for _ in range(10):
        bulk = np.sort(rng.uniform(0.5, 4.0, 2))
        spike = np.sort(rng.uniform(30.0, 90.0, 2)) / btilde * 0.5
        lam = np.concatenate([bulk, spike])
        lam0 = np.array([btilde, btilde + 1e-6, 1.0, 1.0 + 2e-6])
        g = jointpdf.joint_pdf(WishartSpike(2, 4, 5, 1.0 / btilde, 2), jointpdf.EigenConfiguration(lam, lam0))
        prod = (
            float((alpha + 2.0) * np.sum(np.log(spike)) - btilde * np.sum(spike))
            + float(alpha * np.sum(np.log(bulk)) - np.sum(bulk))
            + 2.0 * math.log(abs(spike[1] - spike[0]))
            + 2.0 * math.log(abs(bulk[1] - bulk[0]))
        )
        logs.append(g.log_magnitude - prod)
    spreads.append(_second_difference_spread(logs))
    # Wishart btilde -> infinity: bulk block keeps alpha + r
    btilde = 200.0
    rng2 = np.random.default_rng(13)
    logs = []
    for _ in range(10):
        bulk = np.sort(rng2.uniform(0.5, 4.0, 2))
        spike = np.sort(rng2.uniform(0.5, 3.0, 2)) / btilde
        lam = np.concatenate([spike, bulk])
        lam0 = np.array([btilde, btilde + 1e-4, 1.0, 1.0 + 2e-6])
        g = jointpdf.joint_pdf(WishartSpike(2, 4, 5, 1.0 / btilde, 2), jointpdf.EigenConfiguration(lam, lam0))
        prod = (
            float(alpha * np.sum(np.log(spike)) - btilde * np.sum(spike))
            + float((alpha + 2.0) * np.sum(np.log(bulk)) - np.sum(bulk))
            + 2.0 * math.log(abs(spike[1] - spike[0]))
            + 2.0 * math.log(abs(bulk[1] - bulk[0]))
        )
        logs.append(g.log_magnitude - prod)
    spreads.append(_second_difference_spread(logs))
    # chiral shift, m=4, r=2, singular-value source c; half-power cross factor
    # in lambda^2 plus the spike block's residual lambda^{alpha+1} weight
    c = 25.0
    alpha = 1
    logs = []
    for _ in range(10):
        bulk = np.sort(rng.uniform(0.4, 1.6, 2))
        spike = np.sort(c + rng.uniform(-1.0, 1.0, 2))
        lam = np.concatenate([bulk, spike])
        lam0 = np.array([1e-3, 2e-3, c, c + 1e-4])
        alphap = alpha + 0.5
        g = jointpdf.joint_pdf(ChiralShift(2, 4, 5, c, 2), jointpdf.EigenConfiguration(lam, lam0))
        prod = (
            -float(np.sum((spike - c) ** 2))
            + 2.0 * math.log(abs(spike[1] - spike[0]))
            + (alpha + 1.0) * float(np.sum(np.log(spike)))
            + 2.0 * alphap * float(np.sum(np.log(bulk)))
            - float(np.sum(bulk**2))
            + 2.0 * math.log(abs(bulk[1] ** 2 - bulk[0] ** 2))
            + float(np.sum([math.log(abs(s * s - b * b)) for s in spike for b in bulk]))
        )
        logs.append(g.log_magnitude - prod)
    spreads.append(_second_difference_spread(logs))
    worst = max(spreads)
    return worst < 0.05, worst, 0.05, f"log-residual spreads {['%.4f' % s for s in spreads]}"


# ---------------------------------------------------------------------------
# mc (heavy): predictor arbitration

def _mc_largest_mean(kernel_model, trials, seed):
    edges = np.linspace(0.0, 1.0, 3)  # histogram unused here
    _, largest = sample_batch(kernel_model, 2, trials, seed, edges)
    return float(np.mean(largest))


def _check_predictor_mc():
    results = []
    # shifted GUE at c = 1.5 (spike value c*J/2)
    pred = separation_predictor(GaussianShift(2, 500, 1.5))
    mean = _mc_largest_mean(ShiftedGUE(500, 1, 1.5 * math.sqrt(1000.0) / 2.0), 200, 1001)
    results.append(abs(mean - pred.location) / pred.location)
    # Wishart spike at s = 3 (n - m fixed)
    pred = separation_predictor(WishartSpike(2, 500, 503, 3.0))
    mean = _mc_largest_mean(SpikedLUE(500, 3.0, 1, 1.0 / 3.0), 200, 1002)
    results.append(abs(mean - pred.location) / pred.location)
    # chiral at c = 1.5 (spike singular value c*J/2, J = 2 sqrt(m))
    pred = separation_predictor(ChiralShift(2, 500, 503, 1.5))
    mean = _mc_largest_mean(ShiftedChiral(500, 3.0, 1, 1.5 * math.sqrt(500.0)), 200, 1003)
    results.append(abs(mean - pred.location) / pred.location)
    worst = max(results)
    return worst < 0.02, worst, 0.02, f"relative errors {['%.4f' % r for r in results]}"


def _check_predictor_mc_gamma():
    pred = separation_predictor(WishartSpikeGamma(2, 250, 2.0, 1.5 * (1.0 + 1.0 / math.sqrt(2.0))))
    from ..ensembles import sample_spiked_wishart

    stream = SeedStream(1004)
    model = WishartSpikeGamma(2, 250, 2.0, 1.5 * (1.0 + 1.0 / math.sqrt(2.0)))
    largest = [sample_spiked_wishart(model, stream, t).eigenvalues[-1] for t in range(200)]
    rel = abs(float(np.mean(largest)) - pred.location) / pred.location
    return rel < 0.02, rel, 0.02, "gamma = 2 variant, m = 250"


SUITES = {
    "specialfn": [
        ("hermite_orthonormality", _check_hermite_orthonormality),
        ("laguerre_orthonormality", _check_laguerre_orthonormality),
        ("catalan_moments", _check_catalan_moments),
        ("narayana_identities", _check_narayana_identities),
    ],
    "spectra": [
        ("stieltjes_vs_quadrature", _check_stieltjes_vs_quadrature),
        ("moment_duality", _check_moment_duality),
    ],
    "secular": [
        ("secular_vs_dense", _check_secular_vs_dense),
        ("interlacing", _check_interlacing),
        ("chiral_secular_oracle", _check_chiral_secular_oracle),
        ("chiral_averaged_interlacing", _check_chiral_averaged_interlacing),
        ("predictor_consistency", _check_predictor_consistency),
    ],
    "ensembles": [
        ("determinism", _check_determinism),
        ("eigensolver_residual", _check_eigensolver_residual),
        ("chiral_sampler_structure", _check_chiral_sampler_structure),
        ("wishart_trace_mc", _check_wishart_trace_mc),
    ],
    "kernels": [
        ("hermite_contour_oracle", _check_hermite_contour),
        ("laguerre_contour_oracle", _check_laguerre_contour),
        ("chiral_contour_oracle", _check_chiral_contour),
        ("kernel_traces", _check_kernel_traces),
        ("kernel_projection", _check_kernel_projection),
        ("biorthogonality", _check_biorthogonality),
        ("asymptotic_convergence", _check_asymptotic_convergence),
        ("correl_symmetry", _check_correl_symmetry),
    ],
    "jointpdf": [
        ("series_vs_determinant", _check_series_vs_determinant),
        ("green_limits", _check_green_limits),
        ("factorization", _check_factorization),
    ],
    "mc": [
        ("predictor_mc", _check_predictor_mc),
        ("predictor_mc_gamma", _check_predictor_mc_gamma),
    ],
}


def run_verify(suite: str = "all") -> dict:
    """Run the named suite (or all) and return a JSON-serializable report."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {['all'] + sorted(SUITES)}")
    names = sorted(SUITES) if suite == "all" else [suite]
    checks = []
    for sname in names:
        for cname, fn in SUITES[sname]:
            passed, measured, tol, detail = fn()
            checks.append(CheckResult(sname, cname, bool(passed), float(measured), float(tol), detail))
    report = {
        "suite": suite,
        "passed": all(c.passed for c in checks),
        "n_checks": len(checks),
        "n_failed": sum(not c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
    return report
