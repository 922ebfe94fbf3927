"""Exact bound states of the 2D radial Schroedinger equation for Kratzer-type
potentials, with a finite-difference and quadrature cross-check."""

from .params import (
    DimensionlessParams,
    NoBoundStatesError,
    PhysicalConstants,
    PotentialKind,
    PotentialSpec,
    QuantumNumbers,
    derive_dimensionless,
)
from .specfun import kummer_1f1, laguerre, log_gamma
from .spectrum import (
    BoundState,
    bound_state,
    degeneracy_classes,
    energy_coulomb_limit,
    energy_kratzer,
    energy_modified1,
    energy_modified2,
    enumerate_levels,
)
from .wavefun import DensityGrid, density_grid, log_normalization, radial_value, total_density

__version__ = "0.1.0"

__all__ = [
    "BoundState",
    "DensityGrid",
    "DimensionlessParams",
    "NoBoundStatesError",
    "PhysicalConstants",
    "PotentialKind",
    "PotentialSpec",
    "QuantumNumbers",
    "bound_state",
    "degeneracy_classes",
    "density_grid",
    "derive_dimensionless",
    "energy_coulomb_limit",
    "energy_kratzer",
    "energy_modified1",
    "energy_modified2",
    "enumerate_levels",
    "kummer_1f1",
    "laguerre",
    "log_gamma",
    "log_normalization",
    "radial_value",
    "total_density",
]
