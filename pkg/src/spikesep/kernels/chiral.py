"""Shifted-chiral kernel: the p_k / q_k biorthogonal pair and densities.

In the squared variable u = lambda^2 the kernel is
    K_m(u, v) = K_{m-r}^alpha(u, v) + sum_{k=1}^r p_k(u) q_k(v)
with
    p_k(u) = e^u/Gamma(a+1) * int_0^inf t^{m+a-r} (t+c^2)^{k-1} e^{-t} 0F1(a+1; -ut) dt
    q_k(u) = u^a e^{-u}/Gamma(a+1) * contour integral of e^v 0F1(a+1; -uv)/(v^{m-r}(v+c^2)^k)
             around the poles {0, -c^2}.
The density of the positive eigenvalues is rho(x) = 2x K_m(x^2, x^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ..logspace import SignedLogValue, slog_sum_columns
from ..specialfn import laguerre_weighted_signlog, log_0f1
from .common import materialize_columns, pair_and_sum
from .hermite import kernel_gue, rising_log
from .laguerre import _bulk_lue_signlog

__all__ = [
    "ShiftedChiral",
    "chiral_pq",
    "chiral_spike_term",
    "kernel_shifted_chiral",
    "density_shifted_chiral",
    "chiral_asymptotic_pq",
]

_SMALL_CSQ = 0.02  # Taylor branch when c^2 falls below this


@dataclass(frozen=True)
class ShiftedChiral:
    m: int
    alpha: float
    r: int
    c: float

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("matrix size must be positive")
        if self.alpha <= -1:
            raise ValueError("need alpha > -1")
        if not 0 <= self.r <= self.m:
            raise ValueError("rank must satisfy 0 <= r <= m")
        if self.c < 0:
            raise ValueError("shift must be nonnegative")


def _laguerre_fixed_param_logs(n, alpha, x):
    """Sign/log of plain L_q^alpha(x) for q < n, from the weighted recurrence."""
    ps, pl = laguerre_weighted_signlog(n, alpha, x)
    qs = np.arange(n)
    # L_q^a = phi_q * x^{-a/2} e^{x/2} sqrt(Gamma(q+a+1)/q!)
    adj = 0.5 * (gammaln(qs + alpha + 1.0) - gammaln(qs + 1.0))
    logs = pl + adj[:, None] - 0.5 * alpha * np.log(x)[None, :] + 0.5 * x[None, :]
    return ps, logs


def _chiral_pq_grid(m, alpha, r, c, x):
    """Sign/log stacks (r, npts) of p_k(x) and q_k(x) over a grid (x > 0)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise ValueError("evaluate the p/q families at x > 0")
    npts = x.size
    q0 = m - r
    csq = c * c
    taylor = csq < _SMALL_CSQ
    extra = 160 if taylor else 0
    ls, ll = _laguerre_fixed_param_logs(m + extra, alpha, x)
    logx = np.log(x)

    psign = np.zeros((r, npts), dtype=np.int8)
    plog = np.full((r, npts), -np.inf)
    qsign = np.zeros((r, npts), dtype=np.int8)
    qlog = np.full((r, npts), -np.inf)

    for k in range(1, r + 1):
        # ---- p_k = sum_l C(k-1,l) c^{2(k-1-l)} Gamma(q0+l+1) L^alpha_{q0+l} ----
        sgs, lgs = [], []
        for l_ in range(k):
            if c == 0.0 and l_ != k - 1:
                continue
            q = q0 + l_
            base = math.log(math.comb(k - 1, l_)) + gammaln(q0 + l_ + 1.0)
            if k - 1 - l_ > 0:
                base += 2.0 * (k - 1 - l_) * math.log(c)
            sgs.append(ls[q])
            lgs.append(ll[q] + base)
        psign[k - 1], plog[k - 1] = slog_sum_columns(np.array(sgs), np.array(lgs))

        # ---- q_k ----
        sgs, lgs = [], []
        wlog = alpha * logx - x  # x^alpha e^{-x}
        if taylor:
            best = np.full(npts, -np.inf)
            for t in range(extra - r):
                q = q0 + k + t - 1
                base = -gammaln(q0 + k + t + alpha)
                lg = ll[q] + wlog + base
                sg = ls[q].copy()
                if t > 0:
                    lg += math.log(math.comb(k + t - 1, t)) + 2.0 * t * math.log(c)
                    sg = (sg * ((-1) ** (t % 2))).astype(np.int8)
                sgs.append(sg)
                lgs.append(lg)
                if c == 0.0:
                    break
                cur = np.where(sg != 0, lg, -np.inf)
                best = np.maximum(best, cur)
                if t > 4 and np.all(cur < best - 45.0):
                    break
        else:
            # residue at 0: sum over Laguerre degrees below q0
            for p in range(q0):
                q = q0 - 1 - p
                base = (
                    math.log(math.comb(k + p - 1, p))
                    - 2.0 * (k + p) * math.log(c)
                    - gammaln(q0 - p + alpha)
                )
                sgn = (-1) ** (p % 2)
                sgs.append((ls[q] * sgn).astype(np.int8))
                lgs.append(ll[q] + wlog + base)
            # residue at -c^2: triple Leibniz over e^v, 0F1(a+1;-xv), v^{-q0}
            for i in range(k):
                f1log = np.array([log_0f1(alpha + 1.0 + i, xi * csq) for xi in x])
                for l_ in range(k - i):
                    s_ = k - 1 - i - l_
                    zero_rise, rise = rising_log(q0, l_)
                    if zero_rise:
                        continue
                    poch_a = gammaln(alpha + 1.0 + i) - gammaln(alpha + 1.0)
                    base = (
                        -gammaln(i + 1.0)
                        - gammaln(l_ + 1.0)
                        - gammaln(s_ + 1.0)
                        - poch_a
                        - gammaln(alpha + 1.0)
                        + rise
                        - csq
                        - 2.0 * (q0 + l_) * math.log(c)
                    )
                    sgn = ((-1) ** (i % 2)) * ((-1) ** (q0 % 2))
                    lg = base + i * logx + f1log + wlog
                    sgs.append(np.full(npts, sgn, dtype=np.int8))
                    lgs.append(lg)
        qsign[k - 1], qlog[k - 1] = slog_sum_columns(np.array(sgs), np.array(lgs))

    return psign, plog, qsign, qlog


def chiral_pq(kind: str, k: int, x: float, m: int, alpha: float, r: int, c: float) -> SignedLogValue:
    """p_k(x) (kind='p') or q_k(x) (kind='q') as a SignedLogValue; x is the squared variable."""
    if not 1 <= k <= r:
        raise ValueError("family index must satisfy 1 <= k <= r")
    ps, pl, qs, ql = _chiral_pq_grid(m, alpha, r, c, np.array([float(x)]))
    if kind == "p":
        return SignedLogValue.from_log(int(ps[k - 1, 0]), float(pl[k - 1, 0]))
    if kind == "q":
        return SignedLogValue.from_log(int(qs[k - 1, 0]), float(ql[k - 1, 0]))
    raise ValueError("kind must be 'p' or 'q'")


def chiral_spike_term(model: ShiftedChiral, x: float, y: float) -> float:
    """Raw sum_k p_k(x) q_k(y) in the squared variable, as a float."""
    ps, pl, _, _ = _chiral_pq_grid(model.m, model.alpha, model.r, model.c, np.array([float(x)]))
    _, _, qs, ql = _chiral_pq_grid(model.m, model.alpha, model.r, model.c, np.array([float(y)]))
    total = SignedLogValue.zero()
    for k in range(model.r):
        total = total + SignedLogValue.from_log(int(ps[k, 0]), float(pl[k, 0])) * SignedLogValue.from_log(
            int(qs[k, 0]), float(ql[k, 0])
        )
    return total.to_float()


def kernel_shifted_chiral(model: ShiftedChiral, x: float, y: float) -> float:
    """K_m(x^2, y^2) for positive-eigenvalue arguments x, y > 0 (symmetric convention)."""
    if x <= 0 or y <= 0:
        raise ValueError("kernel arguments must be > 0")
    u, v = x * x, y * y
    bsign, blog = _bulk_lue_signlog(model.m - model.r, model.alpha, np.array([u]), np.array([v]))
    total = SignedLogValue.from_log(int(bsign[0]), float(blog[0]))
    if model.r:
        ps, pl, _, _ = _chiral_pq_grid(model.m, model.alpha, model.r, model.c, np.array([u]))
        _, _, qs, ql = _chiral_pq_grid(model.m, model.alpha, model.r, model.c, np.array([v]))
        wu = 0.5 * model.alpha * math.log(u) - 0.5 * u
        wv = -0.5 * model.alpha * math.log(v) + 0.5 * v
        for k in range(model.r):
            left = SignedLogValue.from_log(int(ps[k, 0]), float(pl[k, 0] + wu))
            right = SignedLogValue.from_log(int(qs[k, 0]), float(ql[k, 0] + wv))
            total = total + left * right
    return total.to_float()


def density_shifted_chiral(model: ShiftedChiral, x):
    """Density of the positive eigenvalues, rho(x) = 2x K_m(x^2, x^2)."""
    x = np.asarray(x, dtype=float)
    xv = np.atleast_1d(x).astype(float)
    if np.any(xv < 0):
        raise ValueError("density is supported on x >= 0")
    out = np.zeros(xv.shape)
    pos = xv > 0
    xp = xv[pos]
    if xp.size:
        u = xp * xp
        bsign, blog = _bulk_lue_signlog(model.m - model.r, model.alpha, u)
        if model.r:
            ps, pl, qs, ql = _chiral_pq_grid(model.m, model.alpha, model.r, model.c, u)
            ssign, slog = pair_and_sum(ps, pl, qs, ql)
            sign, log = slog_sum_columns(
                np.vstack([bsign[None, :], ssign[None, :]]),
                np.vstack([blog[None, :], slog[None, :]]),
            )
        else:
            sign, log = bsign, blog
        out[pos] = 2.0 * xp * materialize_columns(sign, log)
    return float(out[0]) if x.ndim == 0 else out


def chiral_asymptotic_pq(r: int, c: float, x: float, y: float) -> float:
    """Large-shift limit of the spike term (squared-variable arguments):

    e^{(sqrt(x)-c)^2/2 - (sqrt(y)-c)^2/2} K_r^GUE(sqrt(x)-c, sqrt(y)-c) / (2c).
    """
    if c <= 0:
        raise ValueError("asymptotic form needs c > 0")
    if x < 0 or y < 0:
        raise ValueError("arguments are squared eigenvalues, must be >= 0")
    u = math.sqrt(x) - c
    v = math.sqrt(y) - c
    val = kernel_gue(r, u, v)
    if val == 0.0:
        return 0.0
    lg = 0.5 * (u * u - v * v) + math.log(abs(val)) - math.log(2.0 * c)
    if lg > 709.0:
        raise OverflowError("asymptotic kernel overflows at these arguments")
    return math.copysign(math.exp(lg), val)
