"""Exception hierarchy shared across the package."""


class WinsorBoundsError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(WinsorBoundsError, ValueError):
    """An input violates a documented precondition (e.g. sigma <= 0)."""


class ExponentOverflowError(WinsorBoundsError, OverflowError):
    """An exponent exceeds the double-precision range; signalled explicitly
    instead of returning infinity."""


class NoSignChangeError(WinsorBoundsError):
    """Bracket search exhausted its step budget without finding opposite
    function signs."""


class NonFiniteValueError(WinsorBoundsError):
    """A function returned NaN or infinity at a probe point."""


class MaxIterationsError(WinsorBoundsError):
    """The root solver hit its iteration cap; signals a pathological
    function rather than a tolerance issue."""


class CaseViolationError(WinsorBoundsError, ValueError):
    """A certificate was requested outside its case condition."""
