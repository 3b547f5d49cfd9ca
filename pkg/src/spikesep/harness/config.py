"""Experiment configuration and comparison-report records."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from ..kernels import ShiftedChiral, ShiftedGUE, SpikedLUE

__all__ = ["GridSpec", "ExperimentConfig", "ComparisonReport", "worker_count"]

KernelModel = Union[ShiftedGUE, SpikedLUE, ShiftedChiral]

WORKERS_ENV = "SPIKESEP_WORKERS"


def worker_count() -> int:
    """Worker-thread count; overridable via the SPIKESEP_WORKERS env variable.

    Defaults to 1: matrix assembly is GIL-bound for the small matrices the
    figures use, so extra threads only help when the eigensolver dominates
    (large matrices) — opt in explicitly for those runs.  Results are
    identical for any worker count.
    """
    raw = os.environ.get(WORKERS_ENV, "")
    if raw:
        count = int(raw)
        if count < 1:
            raise ValueError(f"{WORKERS_ENV} must be >= 1")
        return count
    return 1


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("grid lower bound must be below upper bound")
        if self.count < 2:
            raise ValueError("grid needs at least two points")

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str  # density | mc | scan | verify | figure
    model: KernelModel
    grid: GridSpec
    trials: int = 1
    bins: Optional[int] = None  # None -> auto
    master_seed: int = 1729
    beta: int = 2
    spikes: Sequence[float] = ()
    outputs: Sequence[str] = ()

    def __post_init__(self):
        if self.kind not in ("density", "mc", "scan", "verify", "figure"):
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.bins is not None and self.bins < 2:
            raise ValueError("bins must be >= 2")
        if self.beta not in (1, 2):
            raise ValueError("beta must be 1 or 2")

    def bin_count(self) -> int:
        return self.bins if self.bins is not None else 101


@dataclass
class ComparisonReport:
    l1_distance: float = float("nan")
    sup_distance: float = float("nan")
    trace_exact: float = float("nan")
    trace_empirical: float = float("nan")
    peak_locations: list = field(default_factory=list)
    predictor_location: Optional[float] = None
    pass_flags: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "l1_distance": self.l1_distance,
            "sup_distance": self.sup_distance,
            "trace_exact": self.trace_exact,
            "trace_empirical": self.trace_empirical,
            "peak_locations": list(self.peak_locations),
            "predictor_location": self.predictor_location,
            "pass_flags": dict(self.pass_flags),
        }
