"""Physical input parameters and the reduced quantities derived from them.

All frequencies are ordinary frequencies in Hz.  The linearized dynamics is
homogeneous in frequency, so the only place an absolute energy scale enters is
the thermal occupation, which converts to angular frequency (2*pi*nu).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from scipy.constants import hbar, k as k_B

from .errors import ConfigError

__all__ = [
    "AtomicParams",
    "MechanicalMode",
    "SystemConfig",
    "EffectiveParams",
    "derive_effective",
    "thermal_occupation",
    "steady_positions",
]

MIN_QUALITY_FACTOR = 100.0


@dataclass(frozen=True)
class AtomicParams:
    """Laser-cooled atomic cloud.

    Attributes
    ----------
    gamma_sp : float
        Spontaneous emission rate [Hz].
    rabi : float
        Rabi frequency of the cooling laser [Hz].
    detuning : float
        Laser-transition detuning [Hz], either sign.
    lamb_dicke : float
        Lamb-Dicke parameter, in (0, 1).
    omega_ph : float
        Bare phonon excitation frequency [Hz].
    """

    gamma_sp: float
    rabi: float
    detuning: float
    lamb_dicke: float
    omega_ph: float = 0.0

    def __post_init__(self):
        if not self.gamma_sp > 0:
            raise ConfigError(f"gamma_sp must be > 0, got {self.gamma_sp!r}")
        if not self.rabi >= 0:
            raise ConfigError(f"rabi must be >= 0, got {self.rabi!r}")
        if not 0 < self.lamb_dicke < 1:
            raise ConfigError(f"lamb_dicke must lie in (0, 1), got {self.lamb_dicke!r}")
        if not math.isfinite(self.detuning):
            raise ConfigError(f"detuning must be finite, got {self.detuning!r}")


@dataclass(frozen=True)
class MechanicalMode:
    """One flexural mode: frequency ``nu``, energy damping ``kappa`` and coupling ``g`` (all Hz).

    ``omega_cp`` is the optional Casimir-Polder frequency shift of this mode; it
    only enters the informational effective phonon frequency.
    """

    nu: float
    kappa: float
    g: float = 0.0
    omega_cp: Optional[float] = None

    def __post_init__(self):
        if not self.nu > 0:
            raise ConfigError(f"mode frequency nu must be > 0, got {self.nu!r}")
        if not self.kappa > 0:
            raise ConfigError(f"mode damping kappa must be > 0, got {self.kappa!r}")
        if not math.isfinite(self.g):
            raise ConfigError(f"coupling g must be finite, got {self.g!r}")
        if self.quality_factor < MIN_QUALITY_FACTOR:
            warnings.warn(
                f"mode with nu={self.nu:g} Hz has Q={self.quality_factor:g} < {MIN_QUALITY_FACTOR:g}; "
                "the Markovian noise model assumes a high quality factor",
                stacklevel=3,
            )

    @property
    def quality_factor(self) -> float:
        return self.nu / self.kappa


@dataclass(frozen=True)
class SystemConfig:
    """Everything needed to simulate one operating point.

    ``theta`` is the effective phonon detuning in Hz and is treated as the
    independent control knob; the steady-state amplitude is computed from it.
    """

    atoms: AtomicParams
    modes: tuple[MechanicalMode, ...]
    temperature: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if len(self.modes) < 1:
            raise ConfigError("at least one mechanical mode is required")
        if not self.temperature > 0:
            raise ConfigError(f"temperature must be > 0 K, got {self.temperature!r}")
        if not math.isfinite(self.theta):
            raise ConfigError(f"theta must be finite, got {self.theta!r}")

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def nus(self) -> tuple[float, ...]:
        return tuple(m.nu for m in self.modes)

    def with_couplings(self, g: float | Sequence[float]) -> "SystemConfig":
        """Return a copy with every mode coupling set to ``g`` (scalar or per mode)."""
        gs = [g] * self.n_modes if isinstance(g, (int, float)) else list(g)
        if len(gs) != self.n_modes:
            raise ConfigError(f"expected {self.n_modes} couplings, got {len(gs)}")
        return replace(self, modes=tuple(replace(m, g=float(gj)) for m, gj in zip(self.modes, gs)))


@dataclass(frozen=True)
class EffectiveParams:
    xi: float
    gamma_eff: float
    omega_eff: float
    alpha_abs: float


def _lorentzian_denominator(atoms: AtomicParams) -> float:
    return 4.0 * atoms.detuning**2 + atoms.gamma_sp**2


def derive_effective(config: SystemConfig) -> EffectiveParams:
    """Reduced drive, damping, frequency and amplitude of the atomic phonon mode.

    The damping denominator uses ``gamma_sp**2 + 4*detuning**2`` (the same
    Lorentzian factor as the drive), and the light-shift term of the phonon
    frequency carries no hbar, so every reduced quantity is a frequency.
    """
    atoms = config.atoms
    denom = _lorentzian_denominator(atoms)
    eta, rabi2, delta = atoms.lamb_dicke, atoms.rabi**2, atoms.detuning

    xi = eta * rabi2 * delta / denom
    gamma_eff = atoms.gamma_sp * eta**2 * rabi2 / (2.0 * denom)
    omega_eff = atoms.omega_ph - eta**2 * rabi2 * delta / denom
    omega_eff += sum(m.omega_cp for m in config.modes if m.omega_cp is not None)

    modulus = math.sqrt(config.theta**2 + gamma_eff**2)
    alpha_abs = abs(xi) / modulus if modulus > 0 else 0.0
    return EffectiveParams(xi=xi, gamma_eff=gamma_eff, omega_eff=omega_eff, alpha_abs=alpha_abs)


def thermal_occupation(nu: float, temperature: float) -> float:
    """Bose-Einstein occupation of a mode at ordinary frequency ``nu`` [Hz] and ``temperature`` [K]."""
    if not nu > 0:
        raise ValueError(f"nu must be > 0, got {nu!r}")
    if not temperature > 0:
        raise ValueError(f"temperature must be > 0, got {temperature!r}")
    x = hbar * 2.0 * math.pi * nu / (k_B * temperature)
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def steady_positions(config: SystemConfig, eff: EffectiveParams) -> list[float]:
    """Mean displacement of each mode; the mean momenta vanish identically."""
    a2 = eff.alpha_abs**2
    return [math.sqrt(2.0) * m.g * a2 / m.nu for m in config.modes]
