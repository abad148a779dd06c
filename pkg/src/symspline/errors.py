"""Exception hierarchy shared by all modules."""


class SymsplineError(Exception):
    """Base class for errors raised by this package."""


class GeometryError(SymsplineError, ValueError):
    """Arguments do not belong to the geometry they were handed to."""


class LogUndefined(SymsplineError, ArithmeticError):
    """The logarithm was requested at or past the cut locus."""


class DomainError(SymsplineError, ValueError):
    """A curve parameter or finite-difference stencil leaves the domain."""


class InputError(SymsplineError, ValueError):
    """A problem file or CLI argument failed validation."""


class NotConverged(SymsplineError):
    """The fixed-point iteration hit ``max_iter`` before reaching ``tol``."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"no convergence after {report.iterations} sweeps "
            f"(last residual {report.residuals[-1]:.3e})"
        )


class Diverged(SymsplineError):
    """An iterate left the domain of the logarithm."""

    def __init__(self, sweep_index, cause=None):
        self.sweep_index = sweep_index
        self.cause = cause
        super().__init__(f"iteration diverged in sweep {sweep_index}: {cause}")
