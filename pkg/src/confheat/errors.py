"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """Raised when an exact enumeration would exceed its hard size limit."""


class CapabilityError(RuntimeError):
    """Raised when an exact/closed-form route is requested for an unsupported family."""


class SolverError(RuntimeError):
    """Raised when a numerical solver fails to converge (distinct from infeasibility)."""


class EvaluationError(RuntimeError):
    """Raised when a user functional produces a non-finite value during Monte Carlo."""
