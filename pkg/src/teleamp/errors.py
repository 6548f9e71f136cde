"""Exception types shared across the simulator."""


class DomainError(ValueError):
    """Parameter outside its physical domain (e.g. |lambda| >= 1, eta outside [0,1])."""


class PoleError(DomainError):
    """Closed-form expression evaluated at a pole of its denominator."""


class ConditioningError(RuntimeError):
    """Matrix solve refused; the condition number is attached for diagnosis."""

    def __init__(self, message: str, cond: float):
        super().__init__(f"{message} (condition number {cond:.3e})")
        self.cond = cond


class TruncationError(RuntimeError):
    """Fock-space truncation is inadequate for the requested computation."""


class WindowDivergenceError(RuntimeError):
    """Acceptance-window Gaussian integral diverges (window too wide for the gain)."""


class GridResolutionError(ValueError):
    """Quadrature grid does not meet the coverage/spacing requirements."""


class BracketError(RuntimeError):
    """Root bracket does not straddle the target; sampled curve attached."""

    def __init__(self, message: str, samples):
        super().__init__(message)
        self.samples = samples
