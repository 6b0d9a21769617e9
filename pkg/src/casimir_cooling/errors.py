"""Exception hierarchy shared by the simulation modules."""


class SimulationError(Exception):
    """Base class for all errors raised by casimir_cooling."""


class ConfigError(SimulationError, ValueError):
    """Invalid or inconsistent configuration input."""


class EigenvalueError(SimulationError):
    """The eigenvalue computation for a drift matrix failed."""


class UnstableSystem(SimulationError):
    """A steady state was requested for a system without one."""


class SolverDegenerate(SimulationError):
    """The Lyapunov equation is numerically singular or the solve lost accuracy."""


class NonPhysical(SimulationError, ValueError):
    """A covariance matrix violates positivity, so entanglement measures are undefined."""
