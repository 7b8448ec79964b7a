from __future__ import annotations


class SimulatorError(Exception):
    """Base class for every error raised by the simulator."""


class ConfigError(SimulatorError):
    """Invalid or incomplete scenario configuration."""

    def __init__(self, message: str, key: str | None = None) -> None:
        super().__init__(message)
        self.key = key


class OperatorError(SimulatorError, ValueError):
    """A linear-algebra object violates its input contract."""


class NotHermitianError(OperatorError):
    pass


class NotUnitaryError(OperatorError):
    pass


class DimensionError(OperatorError):
    pass


class SimulationError(SimulatorError):
    """A protocol or solver failed to produce a trustworthy result."""


class ConvergenceError(SimulationError):
    pass


class FactorizationError(SimulationError):
    pass


class DegeneracyError(SimulationError):
    pass


class LeakageError(SimulationError):
    pass


class NotRepresentableError(SimulationError):
    pass
