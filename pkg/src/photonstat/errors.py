"""Exception hierarchy.

Every error raised for bad input derives from :class:`PhotonStatError`;
parameter problems additionally derive from :class:`ValueError` so that
callers using plain ``except ValueError`` keep working.
"""


class PhotonStatError(Exception):
    """Base class for all photonstat errors."""


class ParameterDomainError(PhotonStatError, ValueError):
    """A parameter lies outside the domain where the quantity is defined."""


class RouteUnavailableError(PhotonStatError):
    """The requested evaluation route is singular for these parameters."""


class UnsupportedOrderError(ParameterDomainError):
    """Photon order outside the range covered by a tabulated formula."""


class FitWindowError(ParameterDomainError):
    """Fit window is too small or lies outside the available series."""


class CoverageError(ParameterDomainError):
    """A series does not cover the orders a computation needs."""


class DivergentRegimeError(ParameterDomainError):
    """Geometric asymptotic form used where it does not converge (Nc*S >= 1)."""


class UndefinedCoherenceError(PhotonStatError, ArithmeticError):
    """g2(0) requested for a distribution with zero mean photon number."""


class ScanRangeError(PhotonStatError):
    """No g2 midpoint crossing was found inside the scanned Nc range."""


class StatisticalPowerError(ParameterDomainError):
    """Too few Monte Carlo samples requested for a meaningful estimate."""


class InvariantViolation(PhotonStatError, RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
