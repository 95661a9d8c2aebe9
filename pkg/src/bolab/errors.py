"""Exception types shared across the package.

Every error the CLI maps to exit status 1 derives from BolabError so the
dispatcher can distinguish user/config mistakes from genuine bugs.
"""


class BolabError(Exception):
    """Base class for all raised-by-contract errors."""


class SizeMismatchError(BolabError):
    """Sample count does not match the grid's collocation count."""


class GridMismatchError(BolabError):
    """Binary operation on fields living on different grids."""


class MeanValueError(BolabError):
    """A mean-zero precondition is violated; carries the residual mean."""

    def __init__(self, mean, tol):
        self.mean = mean
        self.tol = tol
        super().__init__(f"field mean {mean!r} exceeds tolerance {tol!r}; a zero-mean input is required")


class RealFieldError(BolabError):
    """A real-valued precondition is violated."""


class ConfigError(BolabError):
    """Invalid run configuration (bad parameter, stability guard, ...)."""


class DivergenceError(BolabError):
    """The time stepper produced non-finite values; carries the failing time."""

    def __init__(self, t):
        self.t = t
        super().__init__(f"solution diverged (non-finite values) at t = {t:.6g}")


class InsufficientDataError(BolabError):
    """Too few snapshots for the requested computation."""


class ZeroFieldError(BolabError):
    """An operation with a nonzero-input precondition received a zero field."""
