"""Exception types.

Validation problems subclass :class:`InverseDataError` (a ``ValueError``);
numerical trouble inside an engine subclasses :class:`NumericalError`.
The CLI maps the first family to exit status 1 and the second to 2.
"""


class InverseDataError(ValueError):
    pass


class DimensionMismatch(InverseDataError):
    pass


class DimensionTooSmall(InverseDataError):
    pass


class DuplicateOrUnsortedSpectrum(InverseDataError):
    pass


class NonpositiveNormingConstant(InverseDataError):
    pass


class NotNormalized(InverseDataError):
    pass


class InterlacingViolation(InverseDataError):
    pass


class NotJacobi(InverseDataError):
    pass


class BoundaryPoint(InverseDataError):
    """Some bidiagonal coordinate is zero, so norming constants are undefined."""


class InconsistentSigns(InverseDataError):
    """Recovered norming constants do not share a sign."""


class SingularTransposition(InverseDataError):
    pass


class NumericalError(ArithmeticError):
    pass


class NumericalBreakdown(NumericalError):
    def __init__(self, message, direction=None):
        if direction is not None:
            message = f"{direction} direction: {message}"
        super().__init__(message)
        self.direction = direction


class NonTermination(NumericalError):
    pass
