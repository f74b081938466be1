# isolab/errors.py
"""
Exception hierarchy shared by every service. The CLI maps
:class:`InputError` to exit code 2 and :class:`PrecisionError` to exit code 3.
"""


class IsolabError(Exception):
    """Base class for all isolab errors."""


class InputError(IsolabError, ValueError):
    """Malformed input document or invalid parameters."""


class FieldMismatchError(InputError):
    """Operands live in different fields (or over different primes)."""


class PrecisionError(IsolabError, ArithmeticError):
    """The tracked precision does not resolve the requested quantity."""


class DivisionByZeroError(PrecisionError, ZeroDivisionError):
    """Inverse of an element that is zero at its precision."""


class SplittingError(PrecisionError):
    """A Dieudonne-Manin or flag splitting could not be computed at precision."""


class WittDerivationError(IsolabError):
    """A division by p during structure-polynomial derivation was inexact."""


class ConsistencyError(IsolabError):
    """Two independent computations of the same quantity disagree."""
