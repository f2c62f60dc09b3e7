"""Exception types shared across the package.

Validation problems (bad arguments, out-of-domain values) derive from
ValueError so they behave sensibly in plain Python code; runtime failures
of iterative numerics derive from RuntimeError. The CLI maps these onto
distinct exit codes.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class DegenerateDesignError(DomainError):
    """A design parameter makes the technique degenerate (e.g. zero power
    left on the information signal)."""


class ExcludedRegionError(DomainError):
    """An eavesdropper sits exactly at the transmitter, where the
    power-law loss model diverges."""


class RegimeError(DomainError):
    """The operation only makes sense above the critical eavesdropper
    density, and the supplied density is below it."""


class NumericalError(RuntimeError):
    """An iterative numerical routine failed to converge."""

    def __init__(self, message: str, **context: float):
        if context:
            detail = ", ".join(f"{k}={v!r}" for k, v in context.items())
            message = f"{message} ({detail})"
        super().__init__(message)
        self.context = context


class NoCrossingError(NumericalError):
    """A root bracket could not be established: the function does not
    change sign over the searched interval."""


class InsufficientDataError(RuntimeError):
    """A conditional Monte-Carlo estimate has an empty conditioning set."""
