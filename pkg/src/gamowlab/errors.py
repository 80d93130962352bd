"""Exception taxonomy shared across the package.

Every raised condition maps onto one of these classes so callers can react to
the failure mode rather than to the module that noticed it.
"""

from __future__ import annotations


class GamowLabError(Exception):
    """Base class for all package errors."""


class GridMismatchError(GamowLabError):
    """Two states (or a state and an operation) disagree on grid/representation."""


class DataError(GamowLabError):
    """Samples contain NaN/Inf or are otherwise unusable."""


class DomainError(GamowLabError):
    """An argument lies outside the mathematical domain of the function."""


class PoleProximityError(DomainError):
    """Evaluation point is too close to a pole to be meaningful."""


class CapabilityError(GamowLabError):
    """The request exceeds what the implementation supports (overflow guards,
    unsupported argument kinds)."""


class AccuracyError(GamowLabError):
    """A numerical procedure could not reach its accuracy contract.

    Carries optional diagnostics in ``info``.
    """

    def __init__(self, message: str, **info: float):
        super().__init__(message)
        self.info = info


class ConfigurationError(GamowLabError):
    """Inconsistent or unusable configuration (stability bounds, bad scenario
    fields, empty analysis regions)."""


class SearchIntervalError(GamowLabError):
    """An optimisation bracket does not contain an interior minimum."""


class TruncationError(GamowLabError):
    """A quadrature's integrand has not decayed at the grid boundary, so the
    returned value would silently miss tail mass."""


class TruncationWarning(UserWarning):
    """Non-fatal variant: some amplitude was pushed outside the representable
    domain (scaling past the grid edge, absorbing boundaries)."""
