"""Bipartite Gaussian entanglement: partially transposed symplectic eigenvalue and log-negativity."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPhysical
from .steadystate import CovarianceMatrix

__all__ = [
    "BipartiteCovariance",
    "reduce_mech_mech",
    "reduce_mech_phonon",
    "eta_minus",
    "log_negativity",
    "ENTANGLEMENT_MARGIN",
]

ENTANGLEMENT_MARGIN = 1e-12
_PSD_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class BipartiteCovariance:
    """4x4 covariance [[A, C], [C^T, B]] of two modes."""

    a_block: np.ndarray
    b_block: np.ndarray
    c_block: np.ndarray

    def __post_init__(self):
        for name in ("a_block", "b_block", "c_block"):
            m = np.array(getattr(self, name), dtype=float)
            if m.shape != (2, 2):
                raise ValueError(f"{name} must be 2x2, got {m.shape}")
            object.__setattr__(self, name, m)

    @classmethod
    def from_matrix(cls, v) -> "BipartiteCovariance":
        v = np.asarray(v, dtype=float)
        if v.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got {v.shape}")
        return cls(v[:2, :2], v[2:, 2:], v[:2, 2:])

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.a_block, self.c_block], [self.c_block.T, self.b_block]])

    def swapped(self) -> "BipartiteCovariance":
        return BipartiteCovariance(self.b_block, self.a_block, self.c_block.T)


def _reduce(cov: CovarianceMatrix, first: int, second: int) -> BipartiteCovariance:
    idx = [first, first + 1, second, second + 1]
    return BipartiteCovariance.from_matrix(cov.block(idx))


def reduce_mech_mech(cov: CovarianceMatrix, i: int, j: int) -> BipartiteCovariance:
    """Trace out the phonon and all other membranes, keeping modes ``i`` and ``j`` (0-based)."""
    if i == j:
        raise ValueError("a bipartition needs two distinct modes")
    for k in (i, j):
        if not 0 <= k < cov.n_modes:
            raise IndexError(f"mode index {k} out of range for {cov.n_modes} modes")
    return _reduce(cov, 2 * i, 2 * j)


def reduce_mech_phonon(cov: CovarianceMatrix, i: int) -> BipartiteCovariance:
    """Mode ``i`` as the first party, the atomic phonon as the second."""
    if not 0 <= i < cov.n_modes:
        raise IndexError(f"mode index {i} out of range for {cov.n_modes} modes")
    return _reduce(cov, 2 * i, 2 * cov.n_modes)


def _det_extended(m: np.ndarray) -> np.longdouble:
    """Determinant by partially pivoted elimination in extended precision."""
    a = np.array(m, dtype=np.longdouble)
    n = a.shape[0]
    det = np.longdouble(1.0)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0:
            return np.longdouble(0.0)
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        det *= a[k, k]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return det


def eta_minus(bip: BipartiteCovariance) -> float:
    """Smallest symplectic eigenvalue of the partially transposed state.

    With Sigma = det A + det B - 2 det C,

        eta^- = sqrt((Sigma - sqrt(Sigma^2 - 4 det V)) / 2)

    evaluated as sqrt(2 det V / (Sigma + sqrt(Sigma^2 - 4 det V))), the same
    value without the cancellation that ruins the direct form deep in the
    entangled regime.  Sigma and det V are accumulated in extended precision
    because the discriminant cancels when the two symplectic eigenvalues of
    the transposed state nearly coincide.
    """
    v = bip.matrix
    if not np.all(np.isfinite(v)):
        raise NonPhysical("covariance has non-finite entries")
    scale = float(np.max(np.abs(v), initial=0.0))
    if scale == 0.0:
        return 0.0
    if np.linalg.eigvalsh(0.5 * (v + v.T)).min() < -_PSD_RTOL * scale:
        raise NonPhysical("bipartite covariance is not positive semidefinite")

    det_v = _det_extended(v)
    sigma = _det_extended(bip.a_block) + _det_extended(bip.b_block) - 2 * _det_extended(bip.c_block)
    disc = sigma * sigma - 4 * det_v
    tol = _PSD_RTOL * max(float(sigma * sigma), scale**4)
    if disc < -tol or det_v < -tol:
        raise NonPhysical(f"no real symplectic spectrum (Sigma^2 - 4 det V = {float(disc):.3e})")
    disc, det_v = max(disc, np.longdouble(0.0)), max(det_v, np.longdouble(0.0))
    denom = sigma + np.sqrt(disc)
    if denom <= 0:
        return 0.0
    return float(np.sqrt(2 * det_v / denom))


def log_negativity(bip: BipartiteCovariance) -> float:
    """max(0, -ln(2 eta^-)); zero unless eta^- < 1/2 by more than the entanglement margin.

    Product states (vanishing cross block) are separable by construction and
    always give zero, even when a party has sub-vacuum variances.
    """
    eta = eta_minus(bip)
    if not np.any(bip.c_block):
        return 0.0
    if not eta < 0.5 - ENTANGLEMENT_MARGIN:
        return 0.0
    if eta == 0.0:
        return math.inf
    return -math.log(2.0 * eta)
