"""Exception hierarchy. Every domain error derives from :class:`AgewiseError`."""


class AgewiseError(Exception):
    """Base class for errors raised by agewise."""


class UnknownNameError(AgewiseError, ValueError):
    """A family, catalog entry, verb or variant name is not recognised."""


class ParameterError(AgewiseError, ValueError):
    """Wrong arity or an out-of-range parameter value."""

    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name


class SupportError(AgewiseError, ValueError):
    """A time value lies outside the support of the model."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InfiniteMomentError(AgewiseError, ArithmeticError):
    """The requested moment (or the mean needed by a computation) diverges."""


class GridTooCoarseError(AgewiseError, ValueError):
    """A curve has too few points for change-point detection."""


class PreconditionError(AgewiseError, ValueError):
    """An operation was called on an input outside its stated domain."""


class ConvergenceError(AgewiseError, ArithmeticError):
    """An iterative procedure exhausted its budget."""
