"""Graphene membrane mechanics and the Casimir-Polder atom-membrane coupling.

Lengths in the Casimir-Polder helpers are in micrometres, matching the unit of
the tabulated C3 coefficient for rubidium near graphene (Hz um^3).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy.constants import c as SPEED_OF_LIGHT, hbar

from .errors import ConfigError

# Rb-87 near a graphene sheet, Hz um^3
C3_RUBIDIUM_GRAPHENE = -215.65

UM = 1e-6


@dataclass(frozen=True)
class MembraneMaterial:
    """Kirchhoff-plate material constants; defaults are those of monolayer graphene."""

    areal_density: float = 7.6e-7
    clamping_tension: float = 0.0
    young: float = 1e12
    poisson: float = 0.17
    thickness: float = 3.35e-10

    def __post_init__(self):
        if not self.young > 0:
            raise ConfigError("young must be > 0")
        if not 0 <= self.poisson < 0.5:
            raise ConfigError("poisson must lie in [0, 0.5)")
        if not self.thickness > 0:
            raise ConfigError("thickness must be > 0")
        if not self.areal_density > 0:
            raise ConfigError("areal_density must be > 0")
        if not self.clamping_tension >= 0:
            raise ConfigError("clamping_tension must be >= 0")


@dataclass(frozen=True)
class CasimirSetup:
    """Atom-surface geometry.

    Attributes
    ----------
    z_a : float
        Atom-surface distance [um].
    n0 : float
        Areal atomic density [um^-2].
    osc_mass : float
        Oscillator mass entering the zero-point length of the coupling [kg].
        Left explicit because it can be read as either the atomic or the membrane mass.
    c3 : float
        Non-retarded Casimir-Polder coefficient [Hz um^3].
    """

    z_a: float
    n0: float = 1.0
    osc_mass: float = 1.443160648e-25
    c3: float = C3_RUBIDIUM_GRAPHENE

    def __post_init__(self):
        if not self.z_a > 0:
            raise ConfigError("z_a must be > 0")

    def is_non_retarded(self, omega_eg: Optional[float] = None, margin: float = 0.1) -> bool:
        """True when ``z_a`` is well inside the non-retarded zone ``z_a << c / omega_eg``.

        ``omega_eg`` is the atomic transition angular frequency [rad/s]; without it
        the check cannot be made and the setup is assumed valid.
        """
        if omega_eg is None:
            return True
        return self.z_a * UM < margin * SPEED_OF_LIGHT / omega_eg


def bending_modulus(material: MembraneMaterial) -> float:
    """Flexural rigidity Y h^3 / (12 (1 - poisson^2)) [J]."""
    return material.young * material.thickness**3 / (12.0 * (1.0 - material.poisson**2))


def flexural_frequency(k: float, material: MembraneMaterial) -> float:
    """Flexural dispersion sqrt(D/rho k^4 + 2 t_cl/rho k^2) for wavevector ``k`` [1/m]."""
    if k < 0:
        raise ValueError("wavevector must be >= 0")
    rho = material.areal_density
    return math.sqrt(bending_modulus(material) / rho * k**4 + 2.0 * material.clamping_tension / rho * k**2)


def cp_potential(setup: CasimirSetup) -> float:
    return setup.c3 / setup.z_a**3


def cp_frequency(q1: float, setup: CasimirSetup) -> float:
    """Fundamental Casimir-Polder frequency 2 pi C3 exp(-q1 z_a) / z_a, ``q1`` in 1/um."""
    return 2.0 * math.pi * setup.c3 * math.exp(-q1 * setup.z_a) / setup.z_a


def zero_point_length(nu: float, mass: float) -> float:
    """sqrt(hbar / (2 m omega)) in um, with omega = 2 pi nu."""
    if not nu > 0:
        raise ValueError(f"nu must be > 0, got {nu!r}")
    if not mass > 0:
        raise ValueError(f"mass must be > 0, got {mass!r}")
    return math.sqrt(hbar / (2.0 * mass * 2.0 * math.pi * nu)) / UM


def coupling_strength(q: float, nu: float, setup: CasimirSetup) -> float:
    """Atom-membrane coupling g = 2 q x_zpf n0 omega_CP [Hz].

    ``q`` [1/um] is the mode wavevector and ``nu`` [Hz] its frequency.  The
    zero-point length is expressed in um so that q * x_zpf is dimensionless and
    n0 * omega_CP carries the unit Hz.
    """
    if not nu > 0:
        raise ValueError(f"nu must be > 0, got {nu!r}")
    return 2.0 * q * zero_point_length(nu, setup.osc_mass) * setup.n0 * cp_frequency(q, setup)
