"""Exact beta=2 determinantal correlation kernels for the three spiked models."""

from .hermite import (
    ShiftedGUE,
    correl_n,
    density_shifted_gue,
    incomplete_hermite,
    kernel_gue,
    kernel_shifted_gue,
    kernel_shifted_gue_asymptotic,
    spike_term_shifted_gue,
)
from .laguerre import (
    SpikedLUE,
    density_spiked_lue,
    incomplete_laguerre,
    kernel_laguerre,
    kernel_spiked_lue,
)
from .chiral import (
    ShiftedChiral,
    chiral_asymptotic_pq,
    chiral_pq,
    chiral_spike_term,
    density_shifted_chiral,
    kernel_shifted_chiral,
)

__all__ = [
    "ShiftedGUE",
    "SpikedLUE",
    "ShiftedChiral",
    "kernel_gue",
    "incomplete_hermite",
    "kernel_shifted_gue",
    "density_shifted_gue",
    "spike_term_shifted_gue",
    "kernel_shifted_gue_asymptotic",
    "correl_n",
    "kernel_laguerre",
    "incomplete_laguerre",
    "kernel_spiked_lue",
    "density_spiked_lue",
    "chiral_pq",
    "chiral_spike_term",
    "kernel_shifted_chiral",
    "density_shifted_chiral",
    "chiral_asymptotic_pq",
]
