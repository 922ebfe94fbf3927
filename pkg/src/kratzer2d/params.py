"""Physical inputs and their reduction to dimensionless quantities.

All three potentials are written in terms of ``z = r / r0``.  After
multiplying the radial equation by ``2 mu r0^2 / hbar^2`` the Kratzer-type
problems only depend on a coupling (``gamma^2`` or ``delta^2``) and on the
exponent of the small-``r`` power law (``alpha`` or ``eta``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np


class NoBoundStatesError(ValueError):
    """Raised when the potential parameters admit no bound spectrum."""


class PotentialKind(str, enum.Enum):
    KRATZER = "kratzer"
    MODIFIED1 = "mod1"
    MODIFIED2 = "mod2"

    @classmethod
    def parse(cls, value: "str | PotentialKind") -> "PotentialKind":
        if isinstance(value, cls):
            return value
        aliases = {
            "kratzer": cls.KRATZER,
            "mod1": cls.MODIFIED1,
            "modifiedkratzer1": cls.MODIFIED1,
            "mod2": cls.MODIFIED2,
            "modifiedkratzer2": cls.MODIFIED2,
        }
        key = str(value).strip().lower().replace("_", "").replace("-", "")
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown potential kind {value!r}") from None


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise ValueError(f"mu must be positive, got {self.mu}")

    def energy_unit(self, r0: float) -> float:
        """``hbar^2 / (2 mu r0^2)``, the energy that pairs with a dimensionless k^2."""
        return self.hbar**2 / (2.0 * self.mu * r0**2)


@dataclass(frozen=True)
class PotentialSpec:
    """One of the three Kratzer-type potentials.

    ``q`` is the screened Coulomb prefactor K e^2 / rho of the exciton
    potential, an energy; it is only used by ``MODIFIED2``.  ``D0`` is only
    used by ``KRATZER`` and ``MODIFIED1``.
    """

    kind: PotentialKind
    r0: float = 1.0
    D0: Optional[float] = None
    q: Optional[float] = None
    g: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PotentialKind.parse(self.kind))
        if not (self.r0 > 0 and math.isfinite(self.r0)):
            raise ValueError(f"r0 must be positive, got {self.r0}")
        if self.kind is PotentialKind.MODIFIED2:
            if self.q is None or not self.q > 0:
                raise NoBoundStatesError(f"q must be positive for mod2, got {self.q}")
            if not self.g >= 0:
                raise ValueError(f"g must be non-negative, got {self.g}")
        else:
            if self.D0 is None or not self.D0 > 0:
                raise NoBoundStatesError(
                    f"D0 must be positive for {self.kind.value}, got {self.D0}: no bound states"
                )

    @classmethod
    def kratzer(cls, D0: float, r0: float = 1.0) -> "PotentialSpec":
        return cls(PotentialKind.KRATZER, r0=r0, D0=D0)

    @classmethod
    def modified1(cls, D0: float, r0: float = 1.0) -> "PotentialSpec":
        return cls(PotentialKind.MODIFIED1, r0=r0, D0=D0)

    @classmethod
    def modified2(cls, q: float, g: float = 0.0, r0: float = 1.0) -> "PotentialSpec":
        return cls(PotentialKind.MODIFIED2, r0=r0, q=q, g=g)

    def __call__(self, r):
        """Potential energy V(r); accepts scalars or arrays with r > 0."""
        z = np.asarray(r, dtype=float) / self.r0
        if self.kind is PotentialKind.KRATZER:
            v = -2.0 * self.D0 * (1.0 / z - 0.5 / z**2)
        elif self.kind is PotentialKind.MODIFIED1:
            v = self.D0 * ((z - 1.0) / z) ** 2
        else:
            v = -self.q * (1.0 / z - self.g**2 / z**2)
        return v if v.ndim else float(v)

    @property
    def threshold(self) -> float:
        """Value of V at infinity; bound states lie below it."""
        return self.D0 if self.kind is PotentialKind.MODIFIED1 else 0.0


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    m: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"radial quantum number must be a non-negative integer, got {self.n}")
        if int(self.m) != self.m:
            raise ValueError(f"azimuthal quantum number must be an integer, got {self.m}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class DimensionlessParams:
    """Reduced couplings for one (potential, m) pair.

    Fields that do not apply to the potential are ``None``.  ``k`` and
    ``beta`` are filled in by the quantization step in :mod:`spectrum`.
    """

    gamma2: Optional[float] = None
    delta2: Optional[float] = None
    alpha: Optional[float] = None
    eta: Optional[float] = None
    k: Optional[float] = None
    beta: Optional[float] = None

    @property
    def coupling(self) -> float:
        return self.delta2 if self.gamma2 is None else self.gamma2

    @property
    def exponent(self) -> float:
        return self.eta if self.alpha is None else self.alpha


def derive_dimensionless(spec: PotentialSpec, c: PhysicalConstants,
                         qn: QuantumNumbers) -> DimensionlessParams:
    m2 = float(qn.m) ** 2
    if spec.kind is PotentialKind.MODIFIED2:
        delta2 = c.mu * spec.r0**2 * spec.q / c.hbar**2
        eta = math.sqrt(2.0 * spec.g**2 * delta2 + m2)
        return DimensionlessParams(delta2=delta2, eta=eta)
    gamma2 = 2.0 * c.mu * spec.r0**2 * spec.D0 / c.hbar**2
    return DimensionlessParams(gamma2=gamma2, alpha=math.sqrt(m2 + gamma2))
