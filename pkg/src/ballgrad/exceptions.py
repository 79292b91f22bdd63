"""Exception and warning types shared across the package."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget before reaching
    the requested tolerance.  Carries the last value/error estimates so the
    caller can decide whether the partial result is usable."""

    def __init__(self, message, value=None, err_estimate=None):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate


class EvaluationError(RuntimeError):
    """A closed-form evaluation failed an internal sanity check (e.g. a
    logarithm argument went non-positive in floating point).  This signals
    catastrophic cancellation or an implementation bug, never a user error."""


class SeriesBranchWarning(UserWarning):
    """Emitted when an evaluation fell below the small-parameter threshold
    and was served by the truncated series branch."""
