"""Steady-state sympathetic cooling and Gaussian entanglement of graphene flexural modes
coupled to a laser-cooled atomic cloud through Casimir-Polder forces."""

__version__ = "0.1.0"

from .dynamics import LinearSystem, build_diffusion, build_drift, build_system
from .entanglement import BipartiteCovariance, eta_minus, log_negativity, reduce_mech_mech, reduce_mech_phonon
from .errors import ConfigError, EigenvalueError, NonPhysical, SimulationError, SolverDegenerate, UnstableSystem
from .params import (
    AtomicParams,
    EffectiveParams,
    MechanicalMode,
    SystemConfig,
    derive_effective,
    steady_positions,
    thermal_occupation,
)
from .stability import StabilityReport, routh_hurwitz_n1, spectral_stability
from .steadystate import CovarianceMatrix, occupation, phonon_variances, solve_lyapunov
from .sweep import Bipartition, SweepResult, SweepSpec, evaluate_point, run_sweep
