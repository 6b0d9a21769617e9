"""Drift and diffusion matrices of the linearized fluctuation dynamics.

Quadrature ordering is (dq_1, dp_1, ..., dq_N, dp_N, dX, dY), 0-based.  The
rows implement

    dq_j' = -nu_j dp_j
    dp_j' =  nu_j dq_j - kappa_j dp_j - 2 g_j |alpha| dX + noise
    dX'   =  theta dY - gamma dX
    dY'   = -theta dX - gamma dY + sum_j 2 |alpha| g_j dq_j
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .params import EffectiveParams, SystemConfig, derive_effective, thermal_occupation

__all__ = ["LinearSystem", "build_drift", "build_diffusion", "build_system", "quadrature_labels"]


@dataclass(frozen=True, eq=False)
class LinearSystem:
    n_modes: int
    drift: np.ndarray
    diffusion: np.ndarray

    def __post_init__(self):
        dim = 2 * self.n_modes + 2
        for name in ("drift", "diffusion"):
            m = np.array(getattr(self, name), dtype=float)
            if m.shape != (dim, dim):
                raise ValueError(f"{name} must be {dim}x{dim}, got {m.shape}")
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @property
    def dim(self) -> int:
        return 2 * self.n_modes + 2

    @property
    def phonon_slice(self) -> slice:
        return slice(2 * self.n_modes, 2 * self.n_modes + 2)

    def mode_slice(self, j: int) -> slice:
        return slice(2 * j, 2 * j + 2)


def quadrature_labels(n_modes: int) -> list[str]:
    labels = []
    for j in range(1, n_modes + 1):
        labels += [f"q{j}", f"p{j}"]
    return labels + ["X", "Y"]


def build_drift(config: SystemConfig, eff: Optional[EffectiveParams] = None) -> np.ndarray:
    eff = derive_effective(config) if eff is None else eff
    n = config.n_modes
    x, y = 2 * n, 2 * n + 1
    a = np.zeros((2 * n + 2, 2 * n + 2))
    for j, mode in enumerate(config.modes):
        q, p = 2 * j, 2 * j + 1
        coupling = 2.0 * eff.alpha_abs * mode.g
        a[q, p] = -mode.nu
        a[p, q] = mode.nu
        a[p, p] = -mode.kappa
        a[p, x] = -coupling
        a[y, q] = coupling
    a[x, x] = -eff.gamma_eff
    a[x, y] = config.theta
    a[y, x] = -config.theta
    a[y, y] = -eff.gamma_eff
    return a


def build_diffusion(config: SystemConfig) -> np.ndarray:
    """Markovian thermal noise, kappa_j (2 m_j + 1) on each momentum; the phonon quadratures carry none."""
    n = config.n_modes
    d = np.zeros(2 * n + 2)
    for j, mode in enumerate(config.modes):
        m = thermal_occupation(mode.nu, config.temperature)
        d[2 * j + 1] = mode.kappa * (2.0 * m + 1.0)
    return np.diag(d)


def build_system(config: SystemConfig, eff: Optional[EffectiveParams] = None) -> LinearSystem:
    eff = derive_effective(config) if eff is None else eff
    return LinearSystem(config.n_modes, build_drift(config, eff), build_diffusion(config))
