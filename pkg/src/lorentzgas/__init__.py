"""Quantum multiple scattering of a scalar wave off a random gas of
point scatterers in d dimensions.

Modules:
    specialfn    Bessel/hypergeometric helpers and quadrature nodes.
    greens       free-space Helmholtz Green functions in any dimension.
    pointscatter single-scatterer models, cross sections, scattering length.
    medium       gas geometry and configuration sampling.
    foldylax     the coupled-amplitude solver and its conservation checks.
    regimes      ballistic (Born) and diffractive (Airy) closed forms.
    harness      Monte Carlo experiment driver, CSV output, CLI backend.
"""

from .version import __version__

from . import (foldylax, greens, harness, medium, pointscatter, regimes,
               specialfn)
from .harness import ExperimentSpec, read_spec, run_experiment, write_csv
from .medium import Configuration, GasSpec, gas_radius, sample_configuration
from .pointscatter import (DELTA_LIKE, HARD_SPHERE, Barrier, ScattererModel,
                           SquareWell, Tabulated, point_cross_section,
                           scattering_length)

__all__ = [
    "__version__",
    "specialfn", "greens", "pointscatter", "medium", "foldylax", "regimes",
    "harness",
    "ExperimentSpec", "read_spec", "run_experiment", "write_csv",
    "Configuration", "GasSpec", "gas_radius", "sample_configuration",
    "ScattererModel", "HARD_SPHERE", "DELTA_LIKE",
    "SquareWell", "Barrier", "Tabulated",
    "point_cross_section", "scattering_length",
]
