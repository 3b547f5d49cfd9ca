"""LUE kernel, incomplete multiple Laguerre functions, spiked-LUE kernel.

The spiked kernel (inverse-covariance spike btilde, rank r) is
    K_m(x, y) = K_{m-r}^{alpha+r}(x, y) + sum_{j=1}^r Ltilde_j(x) Lambda_j(y)
with the incomplete families defined by contour integrals of
    e^{-xz}(1+z)^{m+alpha} / (z^{m-r} (z-(btilde-1))^j)   around {0, btilde-1}
    e^{xw} w^{m-r} (w-(btilde-1))^{j-1} / (1+w)^{m+alpha} around {-1}.
All closed forms reduce to coefficient lines T_q(x) = [z^q] e^{-xz}(1+z)^M,
which one three-term recurrence supplies for every needed (degree, parameter)
pair; accumulation is in signed log space throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ..logspace import SignedLogValue, slog_sum_columns
from ..specialfn import laguerre_line_signlog, laguerre_weighted_signlog
from .common import materialize_columns, pair_and_sum
from .hermite import rising_log

__all__ = [
    "SpikedLUE",
    "kernel_laguerre",
    "incomplete_laguerre",
    "kernel_spiked_lue",
    "density_spiked_lue",
    "lue_spike_term",
]

_SMALL_EPS = 0.02  # Taylor branch when |btilde - 1| falls below this


@dataclass(frozen=True)
class SpikedLUE:
    m: int
    alpha: float
    r: int
    btilde: float

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("matrix size must be positive")
        if self.alpha <= -1:
            raise ValueError("need alpha > -1")
        if not 0 <= self.r <= self.m:
            raise ValueError("rank must satisfy 0 <= r <= m")
        if self.btilde <= 0:
            raise ValueError("inverse-covariance spike btilde must be > 0")


def kernel_laguerre(n: int, a: float, x, y):
    """Symmetrized Laguerre kernel sum_{p<n} phi_p(x) phi_p(y).

    Same diagonal and correlation determinants as the one-sidedly weighted
    y^a e^{-y} form (they differ by the conjugation (y/x)^{a/2} e^{(x-y)/2}).
    """
    if n < 1:
        raise ValueError("order must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.atleast_1d(x) < 0) or np.any(np.atleast_1d(y) < 0):
        raise ValueError("Laguerre kernel arguments must be >= 0")
    sx, lx = laguerre_weighted_signlog(n, a, np.maximum(np.atleast_1d(x), 1e-300))
    sy, ly = laguerre_weighted_signlog(n, a, np.maximum(np.atleast_1d(y), 1e-300))
    sign, log = pair_and_sum(sx, lx, sy, ly)
    out = materialize_columns(sign, log)
    return float(out[0]) if x.ndim == 0 and y.ndim == 0 else out


def _sign_of_power(base_sign: int, exponent: int) -> int:
    return 1 if (base_sign > 0 or exponent % 2 == 0) else -1


def _incomplete_laguerre_grid(m, alpha, r, btilde, x):
    """Sign/log stacks (r, npts) of Ltilde_j(x) and Lambda_j(x), unconjugated."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise ValueError("evaluate the incomplete Laguerre families at x > 0")
    npts = x.size
    q0 = m - r
    eps = btilde - 1.0
    big_m = m + alpha
    taylor = abs(eps) < _SMALL_EPS
    extra = 160 if taylor else 0
    tline_s, tline_l = laguerre_line_signlog(max(q0 + r + extra, 1), big_m, x)
    logx = np.log(x)

    tsign = np.zeros((r, npts), dtype=np.int8)
    tlog = np.full((r, npts), -np.inf)
    lsign = np.zeros((r, npts), dtype=np.int8)
    llog = np.full((r, npts), -np.inf)

    sgn_eps = 1 if eps > 0 else -1
    log_abs_eps = math.log(abs(eps)) if eps != 0.0 else -math.inf

    for j in range(1, r + 1):
        # ---- Ltilde_j ----
        sgs, lgs = [], []
        if taylor:
            best = np.full(npts, -np.inf)
            for t in range(extra - r):
                q = q0 + j + t - 1
                lg = tline_l[q].copy()
                sg = tline_s[q].copy()
                if t > 0:
                    lg += math.log(math.comb(j + t - 1, t)) + t * log_abs_eps
                    sg = (sg * _sign_of_power(sgn_eps, t)).astype(np.int8)
                sgs.append(sg)
                lgs.append(lg)
                if eps == 0.0:
                    break
                cur = np.where(sg != 0, lg, -np.inf)
                best = np.maximum(best, cur)
                if t > 4 and np.all(cur < best - 45.0):
                    break
        else:
            # residue at eps: triple Leibniz over e^{-x z}, (1+z)^{M}, z^{-q0}
            for i in range(j):
                for k in range(j - i):
                    l_ = j - 1 - i - k
                    zero_rise, rise = rising_log(q0, l_)
                    if zero_rise:
                        continue
                    base = (
                        -gammaln(i + 1.0)
                        - gammaln(k + 1.0)
                        - gammaln(l_ + 1.0)
                        + gammaln(big_m + 1.0)
                        - gammaln(big_m + 1.0 - k)
                        + (big_m - k) * math.log(btilde)
                        + rise
                        - (q0 + l_) * log_abs_eps
                    )
                    sgn = ((-1) ** (i % 2)) * ((-1) ** (l_ % 2)) * _sign_of_power(sgn_eps, q0 + l_)
                    lg = base - x * eps + i * logx
                    sgs.append(np.full(npts, sgn, dtype=np.int8))
                    lgs.append(lg)
            # residue at 0: (-1)^j sum_p C(j+p-1,p) eps^{-(j+p)} T_{q0-1-p}
            for p in range(q0):
                q = q0 - 1 - p
                base = math.log(math.comb(j + p - 1, p)) - (j + p) * log_abs_eps
                sgn = ((-1) ** (j % 2)) * _sign_of_power(sgn_eps, j + p)
                sgs.append((tline_s[q] * sgn).astype(np.int8))
                lgs.append(tline_l[q] + base)
        tsign[j - 1], tlog[j - 1] = slog_sum_columns(np.array(sgs), np.array(lgs))

    # ---- Lambda_j: one shared coefficient line with parameter sum M-1 ----
    pline_s, pline_l = laguerre_line_signlog(m, big_m - 1.0, x)
    for j in range(1, r + 1):
        sgs, lgs = [], []
        for l_ in range(j):
            if eps == 0.0 and l_ != j - 1:
                continue
            q = q0 + l_
            power = j - 1 - l_
            base = (
                math.log(math.comb(j - 1, l_))
                + gammaln(q0 + l_ + 1.0)
                - gammaln(big_m)
            )
            if power > 0:
                base += power * log_abs_eps
            sgn = _sign_of_power(-sgn_eps, power)
            lg = pline_l[q] + base - x + (alpha + r - 1 - l_) * logx
            sgs.append((pline_s[q] * sgn).astype(np.int8))
            lgs.append(lg)
        lsign[j - 1], llog[j - 1] = slog_sum_columns(np.array(sgs), np.array(lgs))

    return tsign, tlog, lsign, llog


def incomplete_laguerre(
    kind: str, j: int, x: float, m: int, alpha: float, r: int, btilde: float
) -> SignedLogValue:
    """Ltilde_j(x) (kind='tilde') or Lambda_j(x) (kind='plain') as a SignedLogValue."""
    if not 1 <= j <= r:
        raise ValueError("family index must satisfy 1 <= j <= r")
    ts, tl, ps, pl = _incomplete_laguerre_grid(m, alpha, r, btilde, np.array([float(x)]))
    if kind == "tilde":
        return SignedLogValue.from_log(int(ts[j - 1, 0]), float(tl[j - 1, 0]))
    if kind == "plain":
        return SignedLogValue.from_log(int(ps[j - 1, 0]), float(pl[j - 1, 0]))
    raise ValueError("kind must be 'tilde' or 'plain'")


def _bulk_lue_signlog(n_bulk, a, x, y=None):
    if n_bulk == 0:
        size = np.atleast_1d(x).size
        return np.zeros(size, dtype=np.int8), np.full(size, -np.inf)
    sx, lx = laguerre_weighted_signlog(n_bulk, a, x)
    if y is None:
        sign, log = pair_and_sum(sx, lx, sx, lx)
        return sign, log
    sy, ly = laguerre_weighted_signlog(n_bulk, a, y)
    return pair_and_sum(sx, lx, sy, ly)


def density_spiked_lue(model: SpikedLUE, x):
    """Eigenvalue density K_m(x, x) on a grid; x = 0 allowed for alpha > 0."""
    x = np.asarray(x, dtype=float)
    xv = np.atleast_1d(x).astype(float)
    out = np.zeros(xv.shape)
    pos = xv > 0
    if np.any(xv < 0):
        raise ValueError("density is supported on x >= 0")
    if np.any(~pos) and model.alpha <= 0:
        raise ValueError("x = 0 needs alpha > 0 (density limit 0)")
    xp = xv[pos]
    if xp.size:
        bsign, blog = _bulk_lue_signlog(model.m - model.r, model.alpha + model.r, xp)
        if model.r:
            ts, tl, ls, ll = _incomplete_laguerre_grid(
                model.m, model.alpha, model.r, model.btilde, xp
            )
            ssign, slog = pair_and_sum(ts, tl, ls, ll)
            sign, log = slog_sum_columns(
                np.vstack([bsign[None, :], ssign[None, :]]),
                np.vstack([blog[None, :], slog[None, :]]),
            )
        else:
            sign, log = bsign, blog
        out[pos] = materialize_columns(sign, log)
    return float(out[0]) if x.ndim == 0 else out


def lue_spike_term(model: SpikedLUE, x: float, y: float) -> float:
    """Raw sum_j Ltilde_j(x) Lambda_j(y) as a float."""
    ts, tl, _, _ = _incomplete_laguerre_grid(
        model.m, model.alpha, model.r, model.btilde, np.array([float(x)])
    )
    _, _, ls, ll = _incomplete_laguerre_grid(
        model.m, model.alpha, model.r, model.btilde, np.array([float(y)])
    )
    total = SignedLogValue.zero()
    for j in range(model.r):
        total = total + SignedLogValue.from_log(int(ts[j, 0]), float(tl[j, 0])) * SignedLogValue.from_log(
            int(ls[j, 0]), float(ll[j, 0])
        )
    return total.to_float()


def kernel_spiked_lue(model: SpikedLUE, x: float, y: float) -> float:
    """Spiked-LUE kernel in the symmetric (weight-conjugated) convention.

    The spike term is conjugated by (x/y)^{(alpha+r)/2} e^{-(x-y)/2} so that it
    shares the bulk part's symmetric weighting; diagonal values and all
    correlation determinants are unchanged.
    """
    if x <= 0 or y <= 0:
        raise ValueError("kernel arguments must be > 0")
    a_bulk = model.alpha + model.r
    bsign, blog = _bulk_lue_signlog(model.m - model.r, a_bulk, np.array([x]), np.array([y]))
    total = SignedLogValue.from_log(int(bsign[0]), float(blog[0]))
    if model.r:
        ts, tl, _, _ = _incomplete_laguerre_grid(model.m, model.alpha, model.r, model.btilde, np.array([x]))
        _, _, ls, ll = _incomplete_laguerre_grid(model.m, model.alpha, model.r, model.btilde, np.array([y]))
        wx = 0.5 * a_bulk * math.log(x) - 0.5 * x
        wy = -0.5 * a_bulk * math.log(y) + 0.5 * y
        for j in range(model.r):
            left = SignedLogValue.from_log(int(ts[j, 0]), float(tl[j, 0] + wx))
            right = SignedLogValue.from_log(int(ls[j, 0]), float(ll[j, 0] + wy))
            total = total + left * right
    return total.to_float()
