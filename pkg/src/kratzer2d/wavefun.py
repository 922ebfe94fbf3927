"""Normalized radial wavefunctions, 2D densities and polar density grids.

All three potentials share the radial form

    phi(r) = C z^e exp(-s z) L_n^{2e}(2 s z),   z = r / r0,

with (e, s) = (alpha, k), (alpha, beta) or (eta, k).  The full eigenfunction
is phi(r) exp(i m phi) / sqrt(2 pi), so the radial factor alone satisfies
int phi^2 r dr = 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

import numpy as np

from .specfun import laguerre, log_gamma

if TYPE_CHECKING:
    from .spectrum import BoundState

TAIL_FRACTION = 1e-16


def radial_log_norm(n: int, exponent: float, scale: float, r0: float) -> float:
    """ln C for C = (2s)^(e+1) / r0 * sqrt(n! / ((2n + 2e + 1) Gamma(n + 2e + 1)))."""
    e = exponent
    return ((e + 1.0) * math.log(2.0 * scale) - math.log(r0)
            + 0.5 * (log_gamma(n + 1.0) - math.log(2 * n + 2 * e + 1.0) - log_gamma(n + 2 * e + 1.0)))


def log_normalization(state: "BoundState") -> float:
    return radial_log_norm(state.qn.n, state.exponent, state.scale, state.potential.r0)


def radial_value(state: "BoundState", r, dtype=np.float64):
    """phi(r) for scalar or array ``r >= 0``.

    ``dtype=np.longdouble`` evaluates in extended precision where the
    platform has it; finite-difference checks use that to keep rounding
    noise out of second differences.
    """
    r = np.asarray(r, dtype=dtype)
    if np.any(r < 0):
        raise ValueError("radial_value needs r >= 0")
    e, s = dtype(state.exponent), dtype(state.scale)
    z = r / dtype(state.potential.r0)
    with np.errstate(divide="ignore"):
        log_env = dtype(state.log_norm) - s * z + (e * np.log(z) if e > 0 else 0.0)
    out = np.exp(log_env) * laguerre(state.qn.n, 2 * e, 2 * s * z)
    return out if out.ndim else out[()]


def total_density(state: "BoundState", r, phi=0.0):
    """|Psi(r, phi)|^2; independent of phi and of the sign of m."""
    rad = np.asarray(radial_value(state, r))
    dens = rad**2 / (2.0 * math.pi)
    dens = dens + np.zeros(np.broadcast_shapes(np.shape(dens), np.shape(phi)))
    return dens if dens.ndim else float(dens)


def sign_changes(values) -> int:
    """Number of sign changes in a sampled profile, exact zeros skipped."""
    v = np.asarray(values, dtype=float)
    v = v[v != 0.0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def auto_r_max(state: "BoundState", tail: float = TAIL_FRACTION) -> float:
    """Radius beyond which the radial density is below ``tail`` of its peak.

    The density in x = 2 s r / r0 is bounded by a multiple of
    x^p e^{-x} with p = 2e + 2n + 1; W solves p ln(W/p) - (W - p) = ln(tail).
    """
    p = 2.0 * state.exponent + 2.0 * state.qn.n + 1.0
    target = math.log(tail)

    def drop(w):
        return p * math.log(w / p) - (w - p)

    lo, hi = p, p + 1.0
    while drop(hi) > target:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if drop(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi * state.potential.r0 / (2.0 * state.scale)


@dataclass
class DensityGrid:
    r_values: np.ndarray
    phi_values: np.ndarray
    density: np.ndarray  # shape (len(r_values), len(phi_values))
    state_meta: dict = field(default_factory=dict)

    def mass(self) -> float:
        """Trapezoid in r, rectangle rule over the periodic angle."""
        if self.r_values.size < 2:
            return 0.0
        dphi = 2.0 * math.pi / self.phi_values.size
        radial = self.density.sum(axis=1) * dphi * self.r_values
        dr = np.diff(self.r_values)
        return float(np.sum(0.5 * dr * (radial[1:] + radial[:-1])))

    def to_csv(self) -> str:
        lines = ["r,phi,density"]
        for i, r in enumerate(self.r_values):
            for j, ph in enumerate(self.phi_values):
                lines.append(f"{r:.17g},{ph:.17g},{self.density[i, j]:.17g}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "meta": dict(self.state_meta),
            "r": self.r_values.tolist(),
            "phi": self.phi_values.tolist(),
            "density": self.density.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def density_grid(state: "BoundState", r_max: Optional[float] = None,
                 nr: int = 400, nphi: int = 180) -> DensityGrid:
    """Uniform polar grid of |Psi|^2.

    ``phi`` runs over [0, 2 pi) without the endpoint.  ``nphi=1`` gives a
    plain radial profile.
    """
    if r_max is None:
        r_max = auto_r_max(state)
    if not r_max > 0:
        raise ValueError(f"r_max must be positive, got {r_max}")
    if nr < 2 or nphi < 1:
        raise ValueError(f"need nr >= 2 and nphi >= 1, got nr={nr}, nphi={nphi}")
    r = np.linspace(0.0, r_max, nr)
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    radial = np.asarray(total_density(state, r))
    dens = np.repeat(radial[:, None], nphi, axis=1)
    meta = {
        "potential": state.potential.kind.value,
        "n": state.qn.n,
        "m": state.qn.m,
        "energy": state.energy,
        "r_max": float(r_max),
    }
    return DensityGrid(r, phi, dens, meta)
