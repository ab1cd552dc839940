"""
Exception hierarchy shared by every app.

Each error carries the process exit code the command line reports for it:
1 for invalid input, 2 for numerical failure.
"""
from typing import Optional


class HyperbolizationError(Exception):
    """Base class for all errors raised by the hyperbolization services."""
    exit_code = 1

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def as_dict(self) -> dict:
        """Error payload used by command output and logs."""
        payload = {'error_type': type(self).__name__, 'message': self.message}
        payload.update({key: value for key, value in self.context.items() if value is not None})
        return payload


class InvalidModelError(HyperbolizationError):
    """Model parameters violate the LinearModel invariants."""


class PermutationError(HyperbolizationError):
    """Malformed signed permutation or size mismatch with the model order."""


class CensusBoundError(HyperbolizationError):
    """The exhaustive census would exceed the configured candidate limit."""


class UnknownPresetError(HyperbolizationError):
    """Requested reproduction preset does not exist."""


class EigenSolverError(HyperbolizationError):
    """Dense eigensolver failed to converge."""
    exit_code = 2


class SeparationError(HyperbolizationError):
    """The slow eigenvalue of the relaxation generator is not separated."""
    exit_code = 2


class SolverInstabilityError(HyperbolizationError):
    """Time stepping produced NaN/Inf values or lost reality of a real field."""
    exit_code = 2

    def __init__(self, message: str, time: Optional[float] = None,
                 tau: Optional[float] = None, dt: Optional[float] = None, **context):
        super().__init__(message, time=time, tau=tau, dt=dt, **context)
        self.time = time
        self.tau = tau
        self.dt = dt
