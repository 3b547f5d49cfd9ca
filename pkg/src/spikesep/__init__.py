"""spikesep: eigenvalue separation in spiked random matrix ensembles.

Exact beta=2 determinantal kernels, secular-equation separation predictors,
limiting spectral laws, seeded Monte Carlo samplers, and an experiment harness
that renders the standard density/onset plots as CSV and SVG.
"""

__version__ = "0.1.0"

from .logspace import SignedLogValue
from .secular import (
    ChiralShift,
    GaussianShift,
    SecularProblem,
    SeparationPrediction,
    WishartSpike,
    WishartSpikeGamma,
    chiral_secular_eigenvalues,
    secular_eigenvalues,
    separation_predictor,
)
from .spectra import (
    DensityCurve,
    MarchenkoPasturFixedDiff,
    MarchenkoPasturGamma,
    Semicircle,
)
from .ensembles import SeedStream, SpectrumSample

__all__ = [
    "__version__",
    "SignedLogValue",
    "SecularProblem",
    "GaussianShift",
    "WishartSpike",
    "WishartSpikeGamma",
    "ChiralShift",
    "SeparationPrediction",
    "secular_eigenvalues",
    "chiral_secular_eigenvalues",
    "separation_predictor",
    "Semicircle",
    "MarchenkoPasturFixedDiff",
    "MarchenkoPasturGamma",
    "DensityCurve",
    "SeedStream",
    "SpectrumSample",
]
