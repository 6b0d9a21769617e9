"""Stationary covariance matrix from the Lyapunov equation A V + V A^T = -D."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dynamics import LinearSystem
from .errors import SolverDegenerate, UnstableSystem
from .stability import spectral_stability

__all__ = [
    "CovarianceMatrix",
    "solve_lyapunov",
    "lyapunov_residual",
    "occupation",
    "phonon_variances",
    "symplectic_eigenvalues",
]

RESIDUAL_TOL = 1e-10
_REFINEMENT_STEPS = 3


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Symmetric steady-state covariance in the LinearSystem quadrature ordering.

    ``v`` is held in extended precision (``numpy.longdouble``).  With quality
    factors around 1e6 the float64 rounding of V alone already moves the
    Lyapunov residual to about 1e-10, so the solver keeps the refinement
    correction in the extra bits.
    """

    v: np.ndarray
    n_modes: int
    residual: float = 0.0

    def __post_init__(self):
        v = np.array(self.v, dtype=np.longdouble)
        dim = 2 * self.n_modes + 2
        if v.shape != (dim, dim):
            raise ValueError(f"covariance must be {dim}x{dim}, got {v.shape}")
        v = 0.5 * (v + v.T)
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.v.shape[0]

    def block(self, rows, cols=None) -> np.ndarray:
        cols = rows if cols is None else cols
        return self.v[np.ix_(rows, cols)]

    def min_symplectic_eigenvalue(self) -> float:
        return float(symplectic_eigenvalues(self.v).min())

    def is_physical(self, atol: float = 1e-9) -> bool:
        """Heisenberg bound: every symplectic eigenvalue is at least the vacuum value 1/2."""
        return self.min_symplectic_eigenvalue() >= 0.5 - atol


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a 2n x 2n covariance in (q1, p1, q2, p2, ...) ordering."""
    v = np.asarray(v, dtype=float)
    n = v.shape[0] // 2
    omega = np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    ev = np.abs(np.linalg.eigvals(1j * omega @ v))
    return np.sort(ev)[::2]


def _residual_matrix(a: np.ndarray, v: np.ndarray, d: np.ndarray) -> np.ndarray:
    # Extended precision: with nu/kappa ~ 1e6 the float64 products A V alone
    # carry rounding errors of order 1e-10 relative to D.
    a, v, d = (np.asarray(x, dtype=np.longdouble) for x in (a, v, d))
    return a @ v + v @ a.T + d


def lyapunov_residual(a: np.ndarray, v: np.ndarray, d: np.ndarray) -> float:
    """Relative Frobenius residual ||A V + V A^T + D|| / ||D||."""
    r = _residual_matrix(a, v, d)
    norm = float(np.sqrt(np.sum(r * r)))
    scale = float(np.linalg.norm(np.asarray(d, dtype=float)))
    return norm if scale == 0 else norm / scale


def solve_lyapunov(system: LinearSystem, check_stability: bool = True) -> CovarianceMatrix:
    """Unique solution of A V + V A^T = -D for a Hurwitz drift.

    Bartels-Stewart via :func:`scipy.linalg.solve_continuous_lyapunov`,
    followed by a couple of residual-correction sweeps because the mechanical
    frequencies exceed the damping rates by six or more orders of magnitude.
    """
    a, d = system.drift, system.diffusion
    if check_stability:
        report = spectral_stability(system)
        if not report.stable:
            raise UnstableSystem(f"drift has an eigenvalue with real part {report.max_real_part:.6g} Hz")

    if not np.any(d):
        return CovarianceMatrix(np.zeros_like(a), system.n_modes, 0.0)

    try:
        v = scipy.linalg.solve_continuous_lyapunov(a, -d).astype(np.longdouble)
        for _ in range(_REFINEMENT_STEPS):
            r = _residual_matrix(a, v, d).astype(float)
            if not np.any(r):
                break
            v = v + scipy.linalg.solve_continuous_lyapunov(a, -r)
            v = (v + v.T) / 2
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverDegenerate(f"Lyapunov solve failed: {exc}") from exc

    if not np.all(np.isfinite(v)):
        raise SolverDegenerate("Lyapunov solve returned non-finite entries")
    res = lyapunov_residual(a, v, d)
    if res > RESIDUAL_TOL:
        raise SolverDegenerate(f"Lyapunov residual {res:.3e} exceeds {RESIDUAL_TOL:g}")
    return CovarianceMatrix(v, system.n_modes, res)


def occupation(cov: CovarianceMatrix, mode_index: int) -> float:
    """Effective occupation (<dq^2> + <dp^2> - 1) / 2 of mechanical mode ``mode_index`` (0-based)."""
    if not 0 <= mode_index < cov.n_modes:
        raise IndexError(f"mode index {mode_index} out of range for {cov.n_modes} modes")
    q = 2 * mode_index
    return float((cov.v[q, q] + cov.v[q + 1, q + 1] - 1) / 2)


def phonon_variances(cov: CovarianceMatrix) -> tuple[float, float]:
    """(<dX^2>, <dY^2>)."""
    return float(cov.v[-2, -2]), float(cov.v[-1, -1])
