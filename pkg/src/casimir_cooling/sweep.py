"""Parameter scans through the full steady-state pipeline."""
from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .dynamics import build_system
from .entanglement import eta_minus, log_negativity, reduce_mech_mech, reduce_mech_phonon
from .errors import ConfigError, SimulationError
from .params import EffectiveParams, SystemConfig, derive_effective
from .stability import StabilityReport, spectral_stability
from .steadystate import CovarianceMatrix, occupation, phonon_variances, solve_lyapunov

__all__ = [
    "AXES",
    "Bipartition",
    "PointResult",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "evaluate_point",
    "apply_axis",
    "run_sweep",
    "linspace_grid",
]

AXES = ("theta_over_nu", "coupling", "temperature")

_LABEL_RE = re.compile(r"^m(\d+)_(?:m(\d+)|ph)$")


@dataclass(frozen=True)
class Bipartition:
    """Two parties: mechanical mode ``first`` and either mode ``second`` or the phonon (``None``). 0-based."""

    first: int
    second: Optional[int] = None

    def __post_init__(self):
        if self.first < 0 or (self.second is not None and self.second < 0):
            raise ConfigError("bipartition mode indices must be >= 0")
        if self.second == self.first:
            raise ConfigError("bipartition needs two distinct parties")

    @property
    def label(self) -> str:
        other = "ph" if self.second is None else f"m{self.second + 1}"
        return f"m{self.first + 1}_{other}"

    @classmethod
    def parse(cls, label: str) -> "Bipartition":
        """Parse ``m1_ph`` or ``m1_m2`` (1-based mode numbers)."""
        match = _LABEL_RE.match(label.strip())
        if not match:
            raise ConfigError(f"bad bipartition label {label!r}; expected e.g. 'm1_ph' or 'm1_m2'")
        first = int(match.group(1)) - 1
        second = None if match.group(2) is None else int(match.group(2)) - 1
        return cls(first, second)

    def check(self, n_modes: int) -> None:
        for k in (self.first, self.second):
            if k is not None and k >= n_modes:
                raise ConfigError(f"bipartition {self.label} refers to mode {k + 1} but only {n_modes} exist")


@dataclass(frozen=True)
class PointResult:
    """Every observable at one operating point; observables are None when no steady state exists."""

    config: SystemConfig
    effective: EffectiveParams
    stability: Optional[StabilityReport]
    covariance: Optional[CovarianceMatrix] = None
    m_eff: Optional[tuple[float, ...]] = None
    phonon_variances: Optional[tuple[float, float]] = None
    entanglement: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def stable(self) -> bool:
        return self.stability is not None and self.stability.stable


def evaluate_point(config: SystemConfig, bipartitions: Sequence[Bipartition] = ()) -> PointResult:
    """effective params -> drift/diffusion -> stability -> covariance -> observables.

    Solver and entanglement failures are recorded in ``error`` rather than raised.
    """
    eff = derive_effective(config)
    system = build_system(config, eff)
    try:
        report = spectral_stability(system)
    except SimulationError as exc:
        return PointResult(config, eff, None, error=f"{type(exc).__name__}: {exc}")
    if not report.stable:
        return PointResult(config, eff, report, error="no steady state: drift is not Hurwitz")

    try:
        cov = solve_lyapunov(system, check_stability=False)
    except SimulationError as exc:
        return PointResult(config, eff, report, error=f"{type(exc).__name__}: {exc}")

    m_eff = tuple(occupation(cov, j) for j in range(config.n_modes))
    ent = {}
    errors = []
    for bp in bipartitions:
        bp.check(config.n_modes)
        bip = reduce_mech_phonon(cov, bp.first) if bp.second is None else reduce_mech_mech(cov, bp.first, bp.second)
        try:
            ent[bp.label] = (eta_minus(bip), log_negativity(bip))
        except SimulationError as exc:
            ent[bp.label] = (None, None)
            errors.append(f"{bp.label}: {type(exc).__name__}: {exc}")
    return PointResult(
        config,
        eff,
        report,
        covariance=cov,
        m_eff=m_eff,
        phonon_variances=phonon_variances(cov),
        entanglement=ent,
        error="; ".join(errors) or None,
    )


def apply_axis(base: SystemConfig, axis: str, value: float, reference_mode: int = 0) -> SystemConfig:
    if axis == "theta_over_nu":
        return replace(base, theta=value * base.modes[reference_mode].nu)
    if axis == "coupling":
        return base.with_couplings(value)
    if axis == "temperature":
        return replace(base, temperature=value)
    raise ConfigError(f"unknown sweep axis {axis!r}; choose one of {', '.join(AXES)}")


def linspace_grid(start: float, stop: float, num: int) -> tuple[float, ...]:
    if int(num) < 1:
        raise ConfigError("sweep grid needs at least one point")
    return tuple(float(x) for x in np.linspace(start, stop, int(num)))


def _check_grid(grid: Sequence[float], what: str) -> tuple[float, ...]:
    grid = tuple(float(x) for x in grid)
    if not grid:
        raise ConfigError(f"{what} grid is empty")
    if not all(math.isfinite(x) for x in grid):
        raise ConfigError(f"{what} grid has non-finite values")
    steps = np.diff(grid)
    if len(grid) > 1 and not (np.all(steps > 0) or np.all(steps < 0)):
        raise ConfigError(f"{what} grid must be strictly monotone")
    return grid


@dataclass(frozen=True)
class SweepSpec:
    """A one-dimensional scan, optionally nested inside an outer scan (density maps)."""

    axis: str
    grid: tuple[float, ...]
    base: SystemConfig
    bipartitions: tuple[Bipartition, ...] = ()
    reference_mode: int = 0
    outer_axis: Optional[str] = None
    outer_grid: tuple[float, ...] = ()

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"unknown sweep axis {self.axis!r}; choose one of {', '.join(AXES)}")
        object.__setattr__(self, "grid", _check_grid(self.grid, "sweep"))
        object.__setattr__(self, "bipartitions", tuple(self.bipartitions))
        if not 0 <= self.reference_mode < self.base.n_modes:
            raise ConfigError(f"reference_mode {self.reference_mode} out of range")
        for bp in self.bipartitions:
            bp.check(self.base.n_modes)
        if self.outer_axis is not None:
            if self.outer_axis not in AXES or self.outer_axis == self.axis:
                raise ConfigError(f"invalid outer axis {self.outer_axis!r}")
            object.__setattr__(self, "outer_grid", _check_grid(self.outer_grid, "outer sweep"))

    @property
    def nested(self) -> bool:
        return self.outer_axis is not None

    def points(self) -> list[tuple[Optional[float], float, SystemConfig]]:
        outer = [(None, self.base)]
        if self.nested:
            outer = [(o, apply_axis(self.base, self.outer_axis, o, self.reference_mode)) for o in self.outer_grid]
        return [
            (o, x, apply_axis(cfg, self.axis, x, self.reference_mode))
            for o, cfg in outer
            for x in self.grid
        ]


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    stable: bool
    decay_rate: Optional[float]
    m_eff: Optional[tuple[float, ...]]
    entanglement: dict
    outer_value: Optional[float] = None
    error: Optional[str] = None

    @classmethod
    def from_point(cls, point: PointResult, axis_value: float, outer_value: Optional[float] = None) -> "SweepRow":
        return cls(
            axis_value=axis_value,
            stable=point.stable,
            decay_rate=point.stability.decay_rate if point.stable else None,
            m_eff=point.m_eff,
            entanglement=dict(point.entanglement),
            outer_value=outer_value,
            error=point.error,
        )


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple[SweepRow, ...]

    @property
    def labels(self) -> list[str]:
        return [bp.label for bp in self.spec.bipartitions]

    def column(self, name: str) -> np.ndarray:
        """Observable as a float array with NaN at points without a steady state.

        ``name`` is ``decay_rate``, ``m_eff_<j>``, ``eta_minus_<label>`` or ``logneg_<label>``.
        """
        out = np.full(len(self.rows), np.nan)
        for i, row in enumerate(self.rows):
            if name == "decay_rate":
                val = row.decay_rate
            elif name.startswith("m_eff_"):
                j = int(name[len("m_eff_"):]) - 1
                val = None if row.m_eff is None else row.m_eff[j]
            elif name.startswith("eta_minus_"):
                val = row.entanglement.get(name[len("eta_minus_"):], (None, None))[0]
            elif name.startswith("logneg_"):
                val = row.entanglement.get(name[len("logneg_"):], (None, None))[1]
            else:
                raise KeyError(name)
            if val is not None:
                out[i] = val
        return out

    @property
    def axis_values(self) -> np.ndarray:
        return np.array([r.axis_value for r in self.rows])

    @property
    def stable_mask(self) -> np.ndarray:
        return np.array([r.stable for r in self.rows])


def _evaluate_task(args):
    config, bipartitions = args
    return evaluate_point(config, bipartitions)


def run_sweep(spec: SweepSpec, workers: Optional[int] = None) -> SweepResult:
    """Evaluate every grid point; rows come back in grid order whatever the execution mode.

    ``workers`` > 1 evaluates the points in a process pool.
    """
    points = spec.points()
    tasks = [(cfg, spec.bipartitions) for _, _, cfg in points]
    if workers is not None and workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results: Iterable[PointResult] = list(pool.map(_evaluate_task, tasks, chunksize=chunk))
    else:
        results = [_evaluate_task(t) for t in tasks]
    rows = tuple(SweepRow.from_point(res, x, o) for (o, x, _), res in zip(points, results))
    return SweepResult(spec, rows)
