"""Exception hierarchy shared by every module."""


class TwistGroupError(Exception):
    """Base class for errors raised by this package."""


class InvalidCurveError(TwistGroupError, ValueError):
    """Integer pair that is zero or not primitive."""


class NotApplicableError(TwistGroupError, ValueError):
    """Hypotheses of the requested theorem or bound do not hold."""


class OutsideDomainError(TwistGroupError, ValueError):
    """Curve with zero norm passed where a curve of positive norm is required."""


class InputError(TwistGroupError, ValueError):
    """Malformed input file or command-line value."""


class InconsistencyError(TwistGroupError, RuntimeError):
    """A brute-force check contradicted a certificate."""
