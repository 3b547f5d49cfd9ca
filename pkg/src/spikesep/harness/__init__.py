"""Experiment orchestration: density/MC comparisons, onset scans, figures, verify."""

from .config import ComparisonReport, ExperimentConfig, GridSpec
from .experiments import exact_density_curve, run_density_experiment, run_onset_scan
from .emit import emit_csv, emit_svg, parse_csv

__all__ = [
    "ComparisonReport",
    "ExperimentConfig",
    "GridSpec",
    "exact_density_curve",
    "run_density_experiment",
    "run_onset_scan",
    "emit_csv",
    "emit_svg",
    "parse_csv",
]
