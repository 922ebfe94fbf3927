"""Finite-difference eigensolver and quadrature checks for the closed forms.

The radial operator ``-(hbar^2/2mu) [(1/r)(r phi')' - m^2 phi / r^2] + V phi``
is discretized in conservative (flux) form on a cell-centred grid
``r_i = (i + 1/2) h``.  Scaling the unknowns by ``sqrt(r_i h)`` (the discrete
counterpart of ``u = sqrt(r) phi``) makes the matrix symmetric tridiagonal.
The face at r = 0 carries zero flux, which keeps the scheme second order
even for m = 0, where the ``-1/(4 r^2)`` form of the u-equation on a plain
grid stalls far from the answer for the Coulomb cusp.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .params import PhysicalConstants, PotentialSpec, QuantumNumbers
from .quadrature import QuadratureError, integrate_radial  # noqa: F401  (re-export)
from .spectrum import BoundState, bound_state
from .tridiag import eigenvector, lowest_eigenvalues, sturm_count
from .wavefun import auto_r_max, radial_value

DEFAULT_POINTS = 4000
RESIDUAL_REL_TOL = 1e-6


class GridTooCoarseError(ArithmeticError):
    pass


class BoxTooSmallError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FdGrid:
    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if not self.r_min > 0:
            raise ValueError(f"r_min must be positive, got {self.r_min}")
        if not self.r_max > self.r_min:
            raise ValueError(f"r_max must exceed r_min, got {self.r_max} <= {self.r_min}")
        if self.n_points < 16:
            raise ValueError(f"need at least 16 points, got {self.n_points}")

    @classmethod
    def cell_centered(cls, box: float, n_points: int) -> "FdGrid":
        h = box / n_points
        return cls(0.5 * h, box - 0.5 * h, int(n_points))

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def box(self) -> float:
        return self.r_max + 0.5 * self.h

    @property
    def nodes(self) -> np.ndarray:
        return self.r_min + self.h * np.arange(self.n_points)

    def refined(self) -> "FdGrid":
        return FdGrid.cell_centered(self.box, 2 * self.n_points)

    def coarsened(self) -> "FdGrid":
        return FdGrid.cell_centered(self.box, self.n_points // 2)


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: np.ndarray          # on ``grid``
    grid: FdGrid
    refined_eigenvalues: np.ndarray  # Richardson combination of grid and grid/2
    convergence_order: float         # observed order for the lowest level
    fine_eigenvalues: np.ndarray
    coarse_eigenvalues: np.ndarray
    level_orders: np.ndarray
    m: int


def radial_matrix(spec: PotentialSpec, c: PhysicalConstants, m: int, grid: FdGrid):
    """Diagonal and off-diagonal of the symmetrized radial Hamiltonian."""
    t = c.hbar**2 / (2.0 * c.mu)
    r = grid.nodes
    h = grid.h
    faces = r[:-1] + 0.5 * h
    diag = 2.0 * t / h**2 + t * m * m / r**2 + spec(r)
    off = -t * faces / (h**2 * np.sqrt(r[:-1] * r[1:]))
    return diag, off


def default_grid(spec: PotentialSpec, c: PhysicalConstants, m: int, count: int,
                 n_points: int = DEFAULT_POINTS, r_max: Optional[float] = None) -> FdGrid:
    """Box wide enough for the most extended requested level (and at least 40 r0)."""
    if r_max is None:
        widest = bound_state(spec, c, QuantumNumbers(count - 1, m))
        r_max = max(40.0 * spec.r0, auto_r_max(widest))
    return FdGrid.cell_centered(r_max, n_points)


def _observed_order(coarse, mid, fine):
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (coarse - mid) / (mid - fine)
        return np.where(ratio > 0, np.log2(ratio), np.nan)


def fd_eigenvalues(spec: PotentialSpec, c: PhysicalConstants, m: int, count: int,
                   grid: Optional[FdGrid] = None, check: bool = True) -> OracleResult:
    """Lowest ``count`` eigenvalues for azimuthal number ``m``.

    Solves on ``grid``, on its half-spacing refinement and on a double
    spacing coarsening; the refined value is the order-2 Richardson
    combination of the first two, the third only feeds the order estimate.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    if grid is None:
        grid = default_grid(spec, c, m, count)
    fine_grid = grid.refined()
    lam = lowest_eigenvalues(*radial_matrix(spec, c, m, grid), count)
    lam_fine = lowest_eigenvalues(*radial_matrix(spec, c, m, fine_grid), count + 1)
    lam_coarse = lowest_eigenvalues(*radial_matrix(spec, c, m, grid.coarsened()), count)
    refined = (4.0 * lam_fine[:count] - lam) / 3.0
    orders = _observed_order(lam_coarse, lam, lam_fine[:count])

    if check:
        spacing = float(np.min(np.diff(lam_fine)))
        gap = float(np.max(np.abs(lam - lam_fine[:count])))
        if gap > 0.1 * spacing:
            raise GridTooCoarseError(
                f"two-grid change {gap:.3g} exceeds 10% of level spacing {spacing:.3g}")
        d, e = radial_matrix(spec, c, m, grid)
        vec = eigenvector(d, e, lam[-1])
        outer = float(np.sum(vec[grid.nodes > 0.9 * grid.r_max] ** 2))
        if outer > 1e-6:
            raise BoxTooSmallError(
                f"level {count - 1} keeps {outer:.3g} of its weight beyond 0.9 r_max")

    return OracleResult(
        eigenvalues=lam,
        grid=grid,
        refined_eigenvalues=refined,
        convergence_order=float(orders[0]),
        fine_eigenvalues=lam_fine[:count],
        coarse_eigenvalues=lam_coarse,
        level_orders=orders,
        m=int(m),
    )


def bound_count(spec: PotentialSpec, c: PhysicalConstants, m: int, grid: FdGrid) -> int:
    """Number of discrete eigenvalues below the continuum threshold."""
    return sturm_count(*radial_matrix(spec, c, m, grid), spec.threshold)


def _second_and_first(f, r, h):
    fm2, fm1, fp1, fp2 = f(r - 2 * h), f(r - h), f(r + h), f(r + 2 * h)
    f0 = f(r)
    d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
    d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)
    return f0, d1, d2


def ode_residual(state: BoundState, spec: Optional[PotentialSpec] = None,
                 c: Optional[PhysicalConstants] = None, sample_points=None) -> np.ndarray:
    """phi'' + phi'/r - m^2 phi/r^2 + (2 mu / hbar^2)(E - V) phi at each point.

    Five-point stencils on the analytic phi, evaluated in extended
    precision.  The step is min(3e-3 r0 / s, r / 100): a fixed fraction of
    the decay length, shrunk near the origin where phi / r^2 dominates.
    """
    spec = state.potential if spec is None else spec
    c = state.constants if c is None else c
    r = np.asarray(sample_points, dtype=float)
    if np.any(r <= 0):
        raise ValueError("sample points must be positive")
    rl = r.astype(np.longdouble)
    h = np.minimum(np.longdouble(3e-3 * spec.r0 / state.scale), rl / 100)
    f0, d1, d2 = _second_and_first(lambda x: radial_value(state, x, dtype=np.longdouble), rl, h)
    m2 = float(state.qn.m) ** 2
    kinetic = (d2 + d1 / rl - m2 * f0 / rl**2).astype(float)
    return kinetic + 2.0 * c.mu / c.hbar**2 * (state.energy - spec(r)) * f0.astype(float)


def residual_tolerance(state: BoundState, phi_max: float) -> float:
    """1e-6 |E| max|phi|, with |E| measured in units of hbar^2 / mu."""
    c = state.constants
    return RESIDUAL_REL_TOL * c.mu * abs(state.energy) / c.hbar**2 * phi_max


def residual_check(state: BoundState, sample_points=None):
    """Return (max |residual|, tolerance) over the sample points."""
    r0 = state.potential.r0
    if sample_points is None:
        sample_points = np.linspace(0.05 * r0, 30.0 * r0, 200)
    res = ode_residual(state, sample_points=sample_points)
    phi_max = float(np.max(np.abs(radial_value(state, sample_points))))
    return float(np.max(np.abs(res))), residual_tolerance(state, phi_max)


def overlap(a: BoundState, b: BoundState, rel_tol: float = 1e-11) -> float:
    """int phi_a phi_b r dr."""
    r_max = max(auto_r_max(a), auto_r_max(b))
    return integrate_radial(lambda r: radial_value(a, r) * radial_value(b, r) * r, r_max, rel_tol)


def orthonormality_matrix(spec: PotentialSpec, c: PhysicalConstants, m: int,
                          n_max: int) -> np.ndarray:
    if not 0 <= n_max <= 8:
        raise ValueError(f"n_max must lie in [0, 8], got {n_max}")
    states = [bound_state(spec, c, QuantumNumbers(n, m)) for n in range(n_max + 1)]
    gram = np.empty((n_max + 1, n_max + 1))
    for i, a in enumerate(states):
        for j in range(i, n_max + 1):
            gram[i, j] = gram[j, i] = overlap(a, states[j])
    return gram


def relative_error(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference) if reference != 0 else abs(value)


__all__ = [
    "BoxTooSmallError",
    "FdGrid",
    "GridTooCoarseError",
    "OracleResult",
    "QuadratureError",
    "bound_count",
    "default_grid",
    "fd_eigenvalues",
    "integrate_radial",
    "ode_residual",
    "orthonormality_matrix",
    "overlap",
    "radial_matrix",
    "relative_error",
    "residual_check",
    "residual_tolerance",
]
