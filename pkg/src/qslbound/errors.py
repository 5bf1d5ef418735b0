"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class InvalidStateError(InvalidInputError):
    """A quantum state argument is not a valid state (Bloch norm, trace, PSD)."""


class NotPSDError(InvalidInputError):
    """A matrix required to be positive semidefinite has a significantly negative eigenvalue."""


class ConvergenceError(RuntimeError):
    """An iterative matrix factorization failed to converge."""


class PoleError(ArithmeticError):
    """Evaluation was requested at (or numerically on top of) a pole."""


class AccuracyError(RuntimeError):
    """A numerical routine could not reach the requested accuracy.

    Carries the best available estimate so callers can decide whether the
    failure is evidence of a genuine divergence.
    """

    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message)
        self.estimate = estimate
