"""Closed-form bound-state energies and level bookkeeping.

Each potential reduces to Kummer's equation whose series terminates when

    1/2 + exponent - coupling / scale = -n,

so ``scale = coupling / (n + 1/2 + exponent)``.  For the Kratzer and exciton
potentials ``scale`` is the wave number k with ``E = -hbar^2 k^2 / (2 mu r0^2)``.

For the shifted potential ``D0 ((r - r0) / r)^2`` the decay rate is
``beta = sqrt(k^2 + gamma^2)`` and the level sits at ``E_Kratzer + D0``.
Since V_mod1(r) = V_Kratzer(r) + D0 exactly, a constant shift of the
Hamiltonian is the only possible difference between the two spectra.  The
``-D0`` form appearing in some write-ups puts levels below the bottom of
the well and is available only as :func:`modified1_minus_d0_energy` for
side-by-side reporting.

The exciton potential with ``g^2 = 1/2`` (``g = 1/sqrt(2)``, not 1/2) and
``q = 2 D0`` is identical to the Kratzer potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

from .params import (
    DimensionlessParams,
    PhysicalConstants,
    PotentialKind,
    PotentialSpec,
    QuantumNumbers,
    derive_dimensionless,
)
from .wavefun import radial_log_norm

DEFAULT_DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class BoundState:
    """One eigenstate.

    ``exponent`` is alpha (Kratzer, mod1) or eta (mod2); ``scale`` is the
    radial decay rate in units of 1/r0, i.e. k for Kratzer and mod2 and beta
    for mod1.  For mod1 ``k`` holds beta as well so that wavefunction code
    can treat all potentials alike.
    """

    qn: QuantumNumbers
    potential: PotentialSpec
    constants: PhysicalConstants
    energy: float
    k: float
    exponent: float
    scale: float
    coupling: float
    log_norm: float

    @property
    def n(self) -> int:
        return self.qn.n

    @property
    def m(self) -> int:
        return self.qn.m

    @property
    def quantization_residual(self) -> float:
        return 0.5 + self.exponent - self.coupling / self.scale + self.qn.n


def _as_qn(qn) -> QuantumNumbers:
    if isinstance(qn, QuantumNumbers):
        return qn
    return QuantumNumbers(*qn)


def _quantized_scale(params: DimensionlessParams, n: int) -> float:
    return params.coupling / (n + 0.5 + params.exponent)


def _build(spec, c, qn, energy, scale, params) -> BoundState:
    return BoundState(
        qn=qn,
        potential=spec,
        constants=c,
        energy=energy,
        k=scale,
        exponent=params.exponent,
        scale=scale,
        coupling=params.coupling,
        log_norm=radial_log_norm(qn.n, params.exponent, scale, spec.r0),
    )


def _require(spec: PotentialSpec, kind: PotentialKind):
    if spec.kind is not kind:
        raise ValueError(f"expected a {kind.value} potential, got {spec.kind.value}")


def energy_kratzer(spec: PotentialSpec, c: PhysicalConstants, qn) -> BoundState:
    _require(spec, PotentialKind.KRATZER)
    qn = _as_qn(qn)
    params = derive_dimensionless(spec, c, qn)
    k = _quantized_scale(params, qn.n)
    energy = -c.energy_unit(spec.r0) * k * k
    return _build(spec, c, qn, energy, k, params)


def energy_modified1(spec: PotentialSpec, c: PhysicalConstants, qn) -> BoundState:
    _require(spec, PotentialKind.MODIFIED1)
    qn = _as_qn(qn)
    params = derive_dimensionless(spec, c, qn)
    beta = _quantized_scale(params, qn.n)
    # k^2 = beta^2 - gamma^2 in units of hbar^2 / (2 mu r0^2); same as E_K + D0
    energy = -c.energy_unit(spec.r0) * beta * beta + spec.D0
    if not energy < spec.threshold:
        raise ArithmeticError(f"level {qn} is not below the continuum threshold")
    return _build(spec, c, qn, energy, beta, params)


def modified1_minus_d0_energy(spec: PotentialSpec, c: PhysicalConstants, qn) -> float:
    """The mod1 level written with ``-D0`` instead of ``+D0``; reporting only."""
    state = energy_modified1(spec, c, qn)
    return state.energy - 2.0 * spec.D0


def energy_modified2(spec: PotentialSpec, c: PhysicalConstants, qn) -> BoundState:
    _require(spec, PotentialKind.MODIFIED2)
    qn = _as_qn(qn)
    params = derive_dimensionless(spec, c, qn)
    k = _quantized_scale(params, qn.n)
    energy = -c.energy_unit(spec.r0) * k * k
    return _build(spec, c, qn, energy, k, params)


_ENERGY = {
    PotentialKind.KRATZER: energy_kratzer,
    PotentialKind.MODIFIED1: energy_modified1,
    PotentialKind.MODIFIED2: energy_modified2,
}


def bound_state(spec: PotentialSpec, c: PhysicalConstants, qn) -> BoundState:
    """Dispatch to the energy routine matching ``spec.kind``."""
    return _ENERGY[spec.kind](spec, c, qn)


def energy_coulomb_limit(spec: PotentialSpec, c: PhysicalConstants, n_principal: int) -> float:
    """Pure 2D Coulomb level ``N = n + |m|`` of the exciton potential with g = 0."""
    _require(spec, PotentialKind.MODIFIED2)
    if spec.g != 0:
        raise ValueError(f"the Coulomb limit needs g = 0, got g = {spec.g}")
    if int(n_principal) != n_principal or n_principal < 0:
        raise ValueError(f"principal quantum number must be a non-negative integer, got {n_principal}")
    delta2 = derive_dimensionless(spec, c, QuantumNumbers(0, 0)).delta2
    return -c.energy_unit(spec.r0) * delta2**2 / (n_principal + 0.5) ** 2


def enumerate_levels(spec: PotentialSpec, c: PhysicalConstants,
                     n_max: int, m_max: int) -> List[BoundState]:
    """All states with n <= n_max and |m| <= m_max, lowest energy first."""
    if n_max < 0 or m_max < 0:
        raise ValueError("n_max and m_max must be non-negative")
    states = [
        bound_state(spec, c, QuantumNumbers(n, m))
        for n in range(n_max + 1)
        for m in range(-m_max, m_max + 1)
    ]
    states.sort(key=lambda s: (s.energy, s.qn.n, s.qn.m))
    return states


def degeneracy_classes(levels: Sequence[BoundState],
                       rel_tol: float = DEFAULT_DEGENERACY_TOL) -> List[List[BoundState]]:
    """Group levels whose energies agree within ``rel_tol`` (relative).

    Classes come out in ascending energy, members ordered by (n, m).
    """
    ordered = sorted(levels, key=lambda s: (s.energy, s.qn.n, s.qn.m))
    classes: List[List[BoundState]] = []
    for state in ordered:
        if classes:
            head = classes[-1][0].energy
            if abs(state.energy - head) <= rel_tol * abs(head):
                classes[-1].append(state)
                continue
        classes.append([state])
    return [sorted(group, key=lambda s: (s.qn.n, s.qn.m)) for group in classes]


def kratzer_equivalent(spec: PotentialSpec) -> PotentialSpec:
    """Exciton potential that coincides with a Kratzer potential, or vice versa.

    Kratzer(D0, r0) maps to mod2(q = 2 D0, g = 1/sqrt(2), r0); a mod2 spec maps
    back to Kratzer(D0 = q / 2) regardless of its g.
    """
    if spec.kind is PotentialKind.MODIFIED2:
        return PotentialSpec.kratzer(D0=0.5 * spec.q, r0=spec.r0)
    return PotentialSpec.modified2(q=2.0 * spec.D0, g=math.sqrt(0.5), r0=spec.r0)
