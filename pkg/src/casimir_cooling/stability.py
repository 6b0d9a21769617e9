"""Steady-state existence and relaxation rates of a linear system."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dynamics import LinearSystem
from .errors import ConfigError, EigenvalueError
from .params import EffectiveParams, SystemConfig, derive_effective

__all__ = ["StabilityReport", "spectral_stability", "routh_hurwitz_n1", "stability_tolerance"]

# relative to the largest mechanical frequency
STABILITY_RTOL = 1e-9


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    max_real_part: float
    tolerance: float
    decay_rate: Optional[float] = None
    relaxation_time: Optional[float] = None

    @property
    def margin(self) -> float:
        """Distance of the slowest eigenvalue from the imaginary axis (negative when unstable)."""
        return -self.max_real_part


def stability_tolerance(system: LinearSystem) -> float:
    a = system.drift
    nus = [abs(a[2 * j + 1, 2 * j]) for j in range(system.n_modes)]
    scale = max(nus) if nus and max(nus) > 0 else float(np.max(np.abs(a), initial=1.0))
    return STABILITY_RTOL * scale


def spectral_stability(system: LinearSystem, tolerance: Optional[float] = None) -> StabilityReport:
    """Stable iff every eigenvalue of the drift has real part below ``-tolerance``.

    Marginal systems (real part within the tolerance of zero) are reported
    unstable.  The decay rate is the damping of the slowest eigenmode.
    """
    a = system.drift
    if not np.all(np.isfinite(a)):
        raise EigenvalueError("drift matrix has non-finite entries")
    try:
        eigvals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise EigenvalueError(f"eigenvalue computation failed: {exc}") from exc
    if not np.all(np.isfinite(eigvals)):
        raise EigenvalueError("eigenvalue computation returned non-finite values")

    eps = stability_tolerance(system) if tolerance is None else tolerance
    max_re = float(np.max(eigvals.real))
    if max_re < -eps:
        rate = -max_re
        return StabilityReport(True, max_re, eps, decay_rate=rate, relaxation_time=1.0 / rate)
    return StabilityReport(False, max_re, eps)


def routh_hurwitz_n1(config: SystemConfig, eff: Optional[EffectiveParams] = None) -> bool:
    """Closed-form Routh-Hurwitz test for one mechanical mode.

    Both inequalities must hold strictly:

        nu^2 (theta^2 + gamma^2) - 4 nu |alpha|^2 g^2 theta > 0
        2 gamma kappa [theta^4 + theta^2 (kappa^2 + 2 kappa gamma + 2 gamma^2 - 2 nu^2)
                       + (kappa gamma + gamma^2 + nu^2)^2]
            + 4 nu |alpha|^2 g^2 theta (kappa + 2 gamma)^2 > 0

    The remaining Hurwitz conditions hold automatically for positive damping.
    """
    if config.n_modes != 1:
        raise ConfigError(f"the closed-form Routh-Hurwitz test needs exactly one mode, got {config.n_modes}")
    eff = derive_effective(config) if eff is None else eff
    mode = config.modes[0]
    nu, kappa, g = mode.nu, mode.kappa, mode.g
    gam, th, a2 = eff.gamma_eff, config.theta, eff.alpha_abs**2

    first = nu**2 * (th**2 + gam**2) - 4.0 * nu * a2 * g**2 * th
    bracket = th**4 + th**2 * (kappa**2 + 2 * kappa * gam + 2 * gam**2 - 2 * nu**2) + (kappa * gam + gam**2 + nu**2) ** 2
    second = 2.0 * gam * kappa * bracket + 4.0 * nu * a2 * g**2 * th * (kappa + 2 * gam) ** 2
    return bool(first > 0 and second > 0 and math.isfinite(first) and math.isfinite(second))
