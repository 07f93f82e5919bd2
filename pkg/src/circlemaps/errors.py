"""Exception types raised by circlemaps."""


class CircleMapError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CircleMapError, ValueError):
    """An argument lies outside the domain of the operation (e.g. |z| >= 1)."""


class PoleProximity(CircleMapError, ArithmeticError):
    """Evaluation point is too close to a pole of a Blaschke factor."""


class AlignmentError(CircleMapError, ValueError):
    """Zeros that were expected to share one argument do not."""


class WindowTooWide(CircleMapError, ValueError):
    """Requested Fourier window does not fit the sample resolution."""


class NotUnimodular(CircleMapError, ValueError):
    """Samples expected on the unit circle are not unimodular."""


class CenterOnCurve(CircleMapError, ValueError):
    """The proposed star center lies on the sampled curve."""


class PoleOnCircle(CircleMapError, ArithmeticError):
    """h(zeta) - w0 vanishes at a grid point of the unit circle."""


class NoSignChange(CircleMapError, ValueError):
    """The balance function keeps a constant sign on the sampled grid."""


class FormatError(CircleMapError, ValueError):
    """An input document does not match the expected map or curve format."""
