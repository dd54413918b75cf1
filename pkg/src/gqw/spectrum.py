"""Bound states of a particle above a hard floor in a uniform gravitational field.

Energies, the gravitational length scale, unit-normalized wavefunctions and
classical turning points. Parameters carry their own unit system; in natural
units hbar = m = g0 = 1, so gravity is measured in multiples of g0 and
energies and lengths in the matching natural scales (see
:attr:`GqwParams.energy_unit` and :attr:`GqwParams.length_unit`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .airy import airy_ai, airy_ai_prime, airy_zeros
from .errors import DomainError

__all__ = [
    "HBAR",
    "NEUTRON_MASS",
    "ELECTRON_VOLT",
    "UnitSystem",
    "GqwParams",
    "NATURAL",
    "Level",
    "level",
    "eigenenergy",
    "eigenenergy_slope",
    "energy_from_length",
    "length_scale",
    "normalization",
    "wavefunction",
    "classical_turning_point",
]

PLANCK = 6.62607015e-34  # J s, exact
HBAR = PLANCK / (2.0 * math.pi)
NEUTRON_MASS = 1.67492749804e-27  # kg
ELECTRON_VOLT = 1.602176634e-19  # J


class UnitSystem(str, Enum):
    SI = "si"
    NATURAL = "natural"


@dataclass(frozen=True)
class GqwParams:
    """Mass, reference gravity and hbar, all in ``unit_system`` units."""

    mass: float = 1.0
    g0: float = 1.0
    hbar: float = 1.0
    unit_system: UnitSystem = UnitSystem.NATURAL

    def __post_init__(self) -> None:
        for name in ("mass", "g0", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        object.__setattr__(self, "unit_system", UnitSystem(self.unit_system))
        if self.unit_system is UnitSystem.NATURAL and (self.mass, self.g0, self.hbar) != (1.0, 1.0, 1.0):
            raise DomainError("natural units require mass = g0 = hbar = 1")

    @classmethod
    def natural(cls) -> "GqwParams":
        return cls()

    @classmethod
    def si(cls, mass: float = NEUTRON_MASS, g0: float = 10.0) -> "GqwParams":
        return cls(mass=mass, g0=g0, hbar=HBAR, unit_system=UnitSystem.SI)

    @property
    def frequency(self) -> float:
        """Omega_g0 = (m g0^2 / 2 hbar)^(1/3)."""
        return (self.mass * self.g0**2 / (2.0 * self.hbar)) ** (1.0 / 3.0)

    @property
    def ell0(self) -> float:
        """Length scale at the reference gravity, (hbar^2 / 2 m^2 g0)^(1/3)."""
        return (self.hbar**2 / (2.0 * self.mass**2 * self.g0)) ** (1.0 / 3.0)

    @property
    def energy_unit(self) -> float:
        """Natural energy unit (m g0^2 hbar^2)^(1/3) expressed in these units."""
        return (self.mass * self.g0**2 * self.hbar**2) ** (1.0 / 3.0)

    @property
    def length_unit(self) -> float:
        """Natural length unit (hbar^2 / m^2 g0)^(1/3) expressed in these units."""
        return (self.hbar**2 / (self.mass**2 * self.g0)) ** (1.0 / 3.0)

    @property
    def force_unit(self) -> float:
        return self.energy_unit / self.length_unit


NATURAL = GqwParams.natural()


@dataclass(frozen=True)
class Level:
    """Quantum number ``index`` (>= 1) and its Airy zero ``zero`` (< 0)."""

    index: int
    zero: float

    def __post_init__(self) -> None:
        if self.index < 1 or not self.zero < 0:
            raise DomainError(f"invalid level: n={self.index}, a_n={self.zero}")


def level(n: int | Level) -> Level:
    """:class:`Level` for quantum number ``n`` (Levels pass through)."""
    if isinstance(n, Level):
        return n
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"level index must be a positive integer, got {n!r}")
    n = int(n)
    size = 16
    while size < n:
        size *= 2
    return Level(n, airy_zeros(size)[n])


def _gravity(g: float) -> float:
    if not (math.isfinite(g) and g > 0):
        raise DomainError(f"gravity must be positive and finite, got {g!r}")
    return float(g)


def eigenenergy(params: GqwParams, lvl: int | Level, g: float) -> float:
    """E_n(g) = -hbar Omega_g0 (g / g0)^(2/3) a_n."""
    lvl = level(lvl)
    g = _gravity(g)
    return -params.hbar * params.frequency * (g / params.g0) ** (2.0 / 3.0) * lvl.zero


def eigenenergy_slope(params: GqwParams, lvl: int | Level, g: float) -> float:
    """dE_n/dg."""
    return 2.0 / 3.0 * eigenenergy(params, lvl, g) / _gravity(g)


def length_scale(params: GqwParams, g: float) -> float:
    """ell_g = (hbar^2 / (2 m^2 g))^(1/3)."""
    g = _gravity(g)
    return (params.hbar**2 / (2.0 * params.mass**2 * g)) ** (1.0 / 3.0)


def energy_from_length(params: GqwParams, lvl: int | Level, ell: float) -> float:
    """The same energy written through the length scale, -(hbar^2 / 2 m ell^2) a_n."""
    if not (math.isfinite(ell) and ell > 0):
        raise DomainError(f"length scale must be positive, got {ell!r}")
    return -params.hbar**2 / (2.0 * params.mass * ell**2) * level(lvl).zero


def normalization(params: GqwParams, lvl: int | Level, g: float) -> float:
    """Unit-L2 constant 1 / (sqrt(ell_g) |Ai'(a_n)|)."""
    lvl = level(lvl)
    return 1.0 / (math.sqrt(length_scale(params, g)) * abs(airy_ai_prime(lvl.zero)))


def wavefunction(params: GqwParams, lvl: int | Level, g: float, x: float) -> float:
    """psi_n(x) = N_n Ai(x / ell_g + a_n) above the floor, zero below it.

    Vanishes at x = 0 exactly: the argument there is the stored zero itself.
    """
    lvl = level(lvl)
    ell = length_scale(params, g)
    if x <= 0:
        return 0.0
    return normalization(params, lvl, g) * airy_ai(x / ell + lvl.zero)


def classical_turning_point(params: GqwParams, lvl: int | Level, g: float) -> float:
    """Height x_n = E_n / (m g) = ell_g |a_n| where the kinetic energy vanishes."""
    lvl = level(lvl)
    return length_scale(params, g) * -lvl.zero
