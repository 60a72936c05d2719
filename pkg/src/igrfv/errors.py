"""Exception types shared across the solver."""


class SolverError(Exception):
    pass


class NonPhysicalState(SolverError):
    """Raised when density, pressure, or internal energy leaves the physical range.

    Carries enough context (cell index, time, offending values) to diagnose a
    blow-up; run drivers map this to exit code 2.
    """

    def __init__(self, message, *, where=None, t=None, values=None):
        super().__init__(message)
        self.where = where
        self.t = t
        self.values = values


class VacuumGenerated(SolverError):
    """The Riemann data would open a vacuum region (pressure positivity fails)."""


class NoConvergence(SolverError):
    """An iterative solve exhausted its iteration budget where failure is fatal."""


class IncompatibleGrids(SolverError):
    """Two fields cannot be compared (mismatched domains or non-integer ratio)."""


class UnknownCase(SolverError):
    """Requested benchmark case is not registered."""


class ParseError(SolverError):
    """Config text could not be parsed; message carries the line number."""


class ValidationError(SolverError):
    """Config parsed but violates a documented constraint."""
