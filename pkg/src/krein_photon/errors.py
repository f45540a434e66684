"""Exception and warning types raised by the library."""


class KreinPhotonError(Exception):
    """Base class for library errors."""


class NotUnimodularError(KreinPhotonError, ValueError):
    """A 2x2 matrix passed as an SL(2,C) element has det != 1."""


class DomainError(KreinPhotonError, ValueError):
    """Input outside the domain of an operation (e.g. r <= 0 on the cone)."""


class DegenerateCoordinatesError(KreinPhotonError, ValueError):
    """Spherical coordinates degenerate on the 3-axis where the frame is undefined."""


class QuadratureAccuracyError(KreinPhotonError):
    """Envelope mass outside the quadrature window exceeds the declared tolerance."""


class QuadratureAccuracyWarning(UserWarning):
    """Non-strict counterpart of :class:`QuadratureAccuracyError`."""
