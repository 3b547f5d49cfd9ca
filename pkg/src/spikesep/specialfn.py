"""Stable special functions and combinatorics used by every other module.

Weighted orthonormal Hermite and Laguerre functions are evaluated by
three-term recurrences on the weighted functions themselves; the raw
polynomials H_p, L_p^a overflow doubles long before the sizes used here
(p up to ~2000), so they are exposed only at small degree for testing.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln, gammasgn, ive

__all__ = [
    "hermite_weighted",
    "laguerre_weighted",
    "hermite_weighted_signlog",
    "laguerre_weighted_signlog",
    "laguerre_line_signlog",
    "hermite_raw",
    "laguerre_raw",
    "bessel_i_scaled",
    "log_0f1",
    "hyp0f1_complex",
    "catalan",
    "narayana",
    "narayana_polynomial",
    "narayana_generating_closed_form",
    "log_gamma",
]

_LOG_PI = math.log(math.pi)
_RESCALE_LO = 1e-250
_RESCALE_HI = 1e250
_RESCALE_LOG = 600.0
_RESCALE_UP = math.exp(_RESCALE_LOG)
_RESCALE_DOWN = math.exp(-_RESCALE_LOG)
_MAX_RAW_DEGREE = 30


def log_gamma(x: float) -> float:
    """log|Gamma(x)|; negative non-integer arguments supported via reflection."""
    return float(gammaln(x))


def hermite_weighted(n: int, x: float) -> np.ndarray:
    """psi_0(x)..psi_{n-1}(x), psi_p = H_p(x) exp(-x^2/2) / (pi^{1/4} 2^{p/2} sqrt(p!)).

    Direct recurrence on psi_p: psi_{p+1} = sqrt(2/(p+1)) x psi_p - sqrt(p/(p+1)) psi_{p-1}.
    Values can underflow to 0 far outside the oscillatory region but never overflow.
    """
    if n < 1:
        raise ValueError("need at least one function (n >= 1)")
    out = np.empty(n)
    out[0] = math.exp(-0.25 * _LOG_PI - 0.5 * x * x)
    if n == 1:
        return out
    out[1] = math.sqrt(2.0) * x * out[0]
    for p in range(1, n - 1):
        out[p + 1] = math.sqrt(2.0 / (p + 1)) * x * out[p] - math.sqrt(p / (p + 1.0)) * out[p - 1]
    return out


def laguerre_weighted(n: int, a: float, x: float) -> np.ndarray:
    """phi_0(x)..phi_{n-1}(x), phi_p = sqrt(p!/Gamma(p+a+1)) x^{a/2} e^{-x/2} L_p^a(x)."""
    if n < 1:
        raise ValueError("need at least one function (n >= 1)")
    if a <= -1:
        raise ValueError("Laguerre parameter must satisfy a > -1")
    if x < 0:
        raise ValueError("Laguerre functions are defined for x >= 0")
    out = np.empty(n)
    if x == 0.0:
        if a < 0:
            raise ValueError("x = 0 diverges for a < 0; evaluate at x > 0")
        out[0] = math.exp(-0.5 * gammaln(a + 1.0)) if a == 0 else 0.0
    else:
        out[0] = math.exp(0.5 * a * math.log(x) - 0.5 * x - 0.5 * gammaln(a + 1.0))
    if n == 1:
        return out
    out[1] = (a + 1.0 - x) / math.sqrt(a + 1.0) * out[0]
    for p in range(1, n - 1):
        c1 = (2 * p + a + 1.0 - x) / math.sqrt((p + 1.0) * (p + 1.0 + a))
        c2 = math.sqrt(p * (p + a) / ((p + 1.0) * (p + 1.0 + a)))
        out[p + 1] = c1 * out[p] - c2 * out[p - 1]
    return out


def _signlog_store(n, x, log0, step):
    """Run a rescaled two-carrier recurrence and store sign/log of every row.

    `step(p, v_p, v_pm1, x)` returns v_{p+1} for carriers scaled by a common
    running offset; the offset is adjusted whenever the carriers leave
    [1e-250, 1e250], so no degree or argument underflows silently.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    npts = x.size
    signs = np.zeros((n, npts), dtype=np.int8)
    logs = np.full((n, npts), -np.inf)
    offset = np.array(log0, dtype=float)
    v_prev = np.zeros(npts)
    v_curr = np.ones(npts)
    for p in range(n):
        nz = v_curr != 0.0
        signs[p, nz] = np.sign(v_curr[nz]).astype(np.int8)
        logs[p, nz] = np.log(np.abs(v_curr[nz])) + offset[nz]
        if p == n - 1:
            break
        v_next = step(p, v_curr, v_prev, x)
        v_prev, v_curr = v_curr, v_next
        mag = np.maximum(np.abs(v_curr), np.abs(v_prev))
        small = (mag > 0) & (mag < _RESCALE_LO)
        if np.any(small):
            v_curr[small] *= _RESCALE_UP
            v_prev[small] *= _RESCALE_UP
            offset[small] -= _RESCALE_LOG
        big = mag > _RESCALE_HI
        if np.any(big):
            v_curr[big] *= _RESCALE_DOWN
            v_prev[big] *= _RESCALE_DOWN
            offset[big] += _RESCALE_LOG
    return signs, logs


def hermite_weighted_signlog(n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Sign/log arrays of psi_p(x) for p < n over a grid; immune to under/overflow."""
    if n < 1:
        raise ValueError("need at least one function (n >= 1)")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    log0 = -0.25 * _LOG_PI - 0.5 * x * x

    def step(p, v, v1, xs):
        if p == 0:
            return math.sqrt(2.0) * xs * v
        return math.sqrt(2.0 / (p + 1)) * xs * v - math.sqrt(p / (p + 1.0)) * v1

    return _signlog_store(n, x, log0, step)


def laguerre_weighted_signlog(n: int, a: float, x) -> tuple[np.ndarray, np.ndarray]:
    """Sign/log arrays of phi_p(x) for p < n over a grid (x > 0 entrywise)."""
    if n < 1:
        raise ValueError("need at least one function (n >= 1)")
    if a <= -1:
        raise ValueError("Laguerre parameter must satisfy a > -1")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise ValueError("signlog Laguerre grid must be strictly positive")
    log0 = 0.5 * a * np.log(x) - 0.5 * x - 0.5 * gammaln(a + 1.0)

    def step(p, v, v1, xs):
        c1 = (2 * p + a + 1.0 - xs) / math.sqrt((p + 1.0) * (p + 1.0 + a))
        c2 = math.sqrt(p * (p + a) / ((p + 1.0) * (p + 1.0 + a)))
        return c1 * v - c2 * v1

    return _signlog_store(n, x, log0, step)


def laguerre_line_signlog(n: int, big_m: float, x) -> tuple[np.ndarray, np.ndarray]:
    """Sign/log arrays of T_q(x) = [z^q] e^{-xz}(1+z)^{big_m} for q < n.

    T_q equals the generalized Laguerre polynomial L_q^{big_m - q}(x); the whole
    line of degree/parameter pairs comes from one recurrence,
    (q+1) T_{q+1} = (big_m - x - q) T_q - x T_{q-1},  T_0 = 1, T_1 = big_m - x.
    """
    if n < 1:
        raise ValueError("need at least one coefficient (n >= 1)")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    log0 = np.zeros(x.size)

    def step(q, v, v1, xs):
        if q == 0:
            return (big_m - xs) * v
        return ((big_m - xs - q) * v - xs * v1) / (q + 1.0)

    return _signlog_store(n, x, log0, step)


def hermite_raw(p: int, x):
    """Raw Hermite polynomial H_p(x); restricted to p <= 30 (testing only)."""
    if p > _MAX_RAW_DEGREE:
        raise ValueError(f"raw Hermite polynomials capped at degree {_MAX_RAW_DEGREE}")
    x = np.asarray(x, dtype=float)
    h_prev, h = np.ones_like(x), 2.0 * x
    if p == 0:
        return h_prev
    for q in range(1, p):
        h_prev, h = h, 2.0 * x * h - 2.0 * q * h_prev
    return h


def laguerre_raw(p: int, a: float, x):
    """Raw generalized Laguerre L_p^a(x); restricted to p <= 30 (testing only)."""
    if p > _MAX_RAW_DEGREE:
        raise ValueError(f"raw Laguerre polynomials capped at degree {_MAX_RAW_DEGREE}")
    x = np.asarray(x, dtype=float)
    l_prev, l = np.ones_like(x), 1.0 + a - x
    if p == 0:
        return l_prev
    for q in range(1, p):
        l_prev, l = l, ((2 * q + a + 1 - x) * l - (q + a) * l_prev) / (q + 1.0)
    return l


def bessel_i_scaled(a: float, x: float) -> float:
    """e^{-x} I_a(x) for a > -1, x >= 0."""
    if a <= -1:
        raise ValueError("order must satisfy a > -1")
    if x < 0:
        raise ValueError("argument must be nonnegative")
    return float(ive(a, x))


def log_0f1(b: float, z: float) -> float:
    """log of 0F1(b; z) for z >= 0, b > 0, safe for huge z.

    Uses 0F1(b; z) = Gamma(b) z^{-(b-1)/2} I_{b-1}(2 sqrt(z)).
    """
    if b <= 0:
        raise ValueError("parameter must be positive")
    if z < 0:
        raise ValueError("use hyp0f1_complex for negative or complex arguments")
    if z == 0.0:
        return 0.0
    s = 2.0 * math.sqrt(z)
    return gammaln(b) - 0.5 * (b - 1.0) * math.log(z) + s + math.log(ive(b - 1.0, s))


def hyp0f1_complex(b: float, z: complex, tol: float = 1e-17, max_terms: int = 600) -> complex:
    """0F1(b; z) by direct series for complex z of moderate size (|z| <= ~2000).

    Oracle-grade helper: raises if the alternating-series cancellation would
    eat more than ~6 digits, instead of returning a silently inaccurate value.
    """
    if abs(z) > 2000:
        raise ValueError("series evaluation restricted to |z| <= 2000")
    term = complex(1.0)
    total = complex(1.0)
    peak = 1.0
    for k in range(1, max_terms):
        term *= z / ((b + k - 1.0) * k)
        total += term
        peak = max(peak, abs(term))
        if abs(term) < tol * max(abs(total), 1e-300):
            break
    if abs(total) > 0 and peak / abs(total) > 1e10:
        raise ArithmeticError("series cancellation too severe for reliable evaluation")
    return total


def catalan(k: int) -> int:
    """k-th Catalan number, exact."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    if k > 64:
        raise OverflowError("Catalan numbers supported up to k = 64")
    return math.comb(2 * k, k) // (k + 1)


def narayana(k: int, j: int) -> int:
    """Narayana number N(k, j) = (1/k) C(k, j+1) C(k, j), exact, 0 <= j <= k-1."""
    if k < 1:
        raise ValueError("row index must be positive")
    if k > 64:
        raise OverflowError("Narayana numbers supported up to k = 64")
    if not 0 <= j <= k - 1:
        raise ValueError("column index must satisfy 0 <= j <= k-1")
    num = math.comb(k, j + 1) * math.comb(k, j)
    q, rem = divmod(num, k)
    if rem:
        raise ArithmeticError("Narayana value failed integrality check")
    return q


def narayana_polynomial(k: int, p: float, q: float) -> float:
    """A_k(p, q) = sum_i N(k, i-1) p^i q^{k+1-i}."""
    return sum(narayana(k, i - 1) * p**i * q ** (k + 1 - i) for i in range(1, k + 1))


def narayana_generating_closed_form(p: float, q: float, t: float) -> float:
    """t * sum_k A_k(p,q) t^k = (1 - u - v - sqrt(1 - 2(u+v) + (u-v)^2)) / 2."""
    u, v = p * t, q * t
    disc = 1.0 - 2.0 * (u + v) + (u - v) ** 2
    if disc < 0:
        raise ValueError("outside the convergence region of the generating function")
    return 0.5 * (1.0 - u - v - math.sqrt(disc))


def gamma_sign(x: float) -> float:
    return float(gammasgn(x))
