"""Seeded matrix samplers for the three spiked ensembles at beta = 1, 2.

Entry variances are fixed by the defining matrix weights:
  * Gaussian weight exp(-(beta/2) Tr G^2): beta=1 diag var 1, off-diag var 1/2;
    beta=2 diag var 1/2, off-diag complex with E|G_ij|^2 = 1/2.  Bulk edge
    J = sqrt(2N) either way.
  * Rectangular weight exp(-(beta/2) Tr Y^dag Y): beta=1 entries var 1;
    beta=2 complex entries with E|y|^2 = 1.  Null Wishart bulk (0, 4m) for
    n - m fixed.
Reproducibility: each trial draws from a counter-based Philox stream keyed by
(master_seed, trial_index), so trials are order- and thread-independent, and
normals come from a fixed-consumption Box-Muller transform of uniforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .secular import ChiralShift, GaussianShift, SpikeModel, WishartSpike, WishartSpikeGamma

__all__ = [
    "SeedStream",
    "SpectrumSample",
    "sample_shifted_gaussian",
    "sample_spiked_wishart",
    "sample_shifted_chiral",
    "draw_gaussian_hermitian",
    "draw_gaussian_rectangular",
    "eigensolver_residual",
]

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class SeedStream:
    """Substream derivation: trial t uses Philox keyed by (master_seed, t)."""

    master_seed: int

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master seed must fit in 64 unsigned bits")

    def generator(self, trial: int) -> Generator:
        if trial < 0 or trial >= 2**64:
            raise ValueError("trial index must fit in 64 unsigned bits")
        key = np.array([self.master_seed, trial], dtype=np.uint64)
        return Generator(Philox(key=key))


@dataclass
class SpectrumSample:
    eigenvalues: np.ndarray
    model: SpikeModel
    seed: int
    trial_index: int

    def __post_init__(self):
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=float)
        if np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("eigenvalues must be ascending")


_triu_cache: dict = {}


def _triu_plan(n: int):
    plan = _triu_cache.get(n)
    if plan is None:
        iu = np.triu_indices(n, k=1)
        plan = (iu, (iu[1], iu[0]), np.diag_indices(n))
        _triu_cache[n] = plan
    return plan


def _normals(gen: Generator, count: int) -> np.ndarray:
    """count standard normals via Box-Muller (fixed uniform consumption:
    one block of 2*ceil(count/2) uniforms per call)."""
    pairs = (count + 1) // 2
    u = gen.random(2 * pairs)
    u1 = u[:pairs]
    u2 = u[pairs:]
    u1 = np.where(u1 > 0.0, u1, 5e-324)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = (2.0 * math.pi) * u2
    z = np.empty(2 * pairs)
    np.multiply(radius, np.cos(angle), out=z[:pairs])
    np.multiply(radius, np.sin(angle), out=z[pairs:])
    return z[:count]


def draw_gaussian_hermitian(gen: Generator, n: int, beta: int) -> np.ndarray:
    """Zero-mean Gaussian symmetric (beta=1) / Hermitian (beta=2) matrix."""
    iu, il, di = _triu_plan(n)
    n_off = iu[0].size
    if beta == 1:
        z = _normals(gen, n + n_off)
        g = np.zeros((n, n))
        g[di] = z[:n]
        off = z[n:] / math.sqrt(2.0)
        g[iu] = off
        g[il] = off
        return g
    if beta == 2:
        z = _normals(gen, n + 2 * n_off)
        g = np.zeros((n, n), dtype=complex)
        g[di] = z[:n] / math.sqrt(2.0)
        off = (z[n : n + n_off] + 1j * z[n + n_off :]) / 2.0
        g[iu] = off
        g[il] = off.conj()
        return g
    raise ValueError("beta must be 1 or 2")


def draw_gaussian_rectangular(gen: Generator, n: int, m: int, beta: int) -> np.ndarray:
    """n x m Gaussian matrix with the rectangular weight's entry variances."""
    if beta == 1:
        return _normals(gen, n * m).reshape(n, m)
    if beta == 2:
        z = _normals(gen, 2 * n * m)
        return (z[: n * m].reshape(n, m) + 1j * z[n * m :].reshape(n, m)) / math.sqrt(2.0)
    raise ValueError("beta must be 1 or 2")


def sample_shifted_gaussian(
    model: GaussianShift, spike_values, stream: SeedStream, trial: int
) -> SpectrumSample:
    """Eigenvalues of G + diag((0)^{N-r}, spike_values)."""
    spike_values = np.asarray(spike_values, dtype=float)
    if spike_values.size != model.r:
        raise ValueError("need one spike value per unit of rank")
    if model.r > model.n:
        raise ValueError("spike rank exceeds matrix dimension")
    gen = stream.generator(trial)
    g = draw_gaussian_hermitian(gen, model.n, model.beta)
    idx = np.arange(model.n - model.r, model.n)
    g[idx, idx] += spike_values
    eig = np.linalg.eigvalsh(g)
    return SpectrumSample(eig, model, stream.master_seed, trial)


def sample_spiked_wishart(model, stream: SeedStream, trial: int) -> SpectrumSample:
    """Eigenvalues of Sigma^{1/2} Y^dag Y Sigma^{1/2}, Sigma = diag((s)^r, (1)^{m-r})."""
    if isinstance(model, WishartSpike):
        m, n = model.m, model.n
    elif isinstance(model, WishartSpikeGamma):
        m = model.m
        n = int(round(model.gamma * model.m))
    else:
        raise TypeError("expected a WishartSpike or WishartSpikeGamma model")
    gen = stream.generator(trial)
    y = draw_gaussian_rectangular(gen, n, m, model.beta)
    sqrt_sigma = np.ones(m)
    sqrt_sigma[:model.r] = math.sqrt(model.s)
    x = y * sqrt_sigma[None, :]
    gram = x.conj().T @ x
    eig = np.linalg.eigvalsh(gram)
    return SpectrumSample(eig, model, stream.master_seed, trial)


def sample_shifted_chiral(
    model: ChiralShift, spike_singulars, stream: SeedStream, trial: int
) -> SpectrumSample:
    """Full +-symmetric spectrum of the chiral block matrix built from X + X0.

    X0 is the n x m matrix with (X0)_{jj} = spike_singulars[j] for j < r. The
    n+m eigenvalues are the +- singular values of X + X0 together with n - m
    exact zeros, computed from the m x m Gram matrix.
    """
    spike_singulars = np.asarray(spike_singulars, dtype=float)
    if spike_singulars.size != model.r:
        raise ValueError("need one spike singular value per unit of rank")
    if model.r > model.m:
        raise ValueError("spike rank exceeds the smaller dimension")
    if np.any(spike_singulars < 0):
        raise ValueError("spike singular values must be >= 0")
    gen = stream.generator(trial)
    y = draw_gaussian_rectangular(gen, model.n, model.m, model.beta)
    idx = np.arange(model.r)
    y[idx, idx] += spike_singulars
    gram = y.conj().T @ y
    sq = np.linalg.eigvalsh(gram)
    sing = np.sqrt(np.clip(sq, 0.0, None))
    eig = np.concatenate([-sing[::-1], np.zeros(model.n - model.m), sing])
    return SpectrumSample(eig, model, stream.master_seed, trial)


def eigensolver_residual(a: np.ndarray) -> float:
    """max_k ||A v_k - lambda_k v_k|| / ||A|| for the solver used by the samplers."""
    vals, vecs = np.linalg.eigh(a)
    resid = a @ vecs - vecs * vals[None, :]
    norm_a = np.linalg.norm(a, 2)
    return float(np.max(np.linalg.norm(resid, axis=0)) / norm_a)
