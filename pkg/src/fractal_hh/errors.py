"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class FractalHHError(Exception):
    """Base class for all package errors."""


class DomainError(FractalHHError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CompositionError(FractalHHError, ValueError):
    """Two fractal numbers with different exponents were combined."""


class ConfigurationError(FractalHHError, ValueError):
    """A grid, tolerance or run configuration is malformed."""


class BackendCapabilityError(FractalHHError):
    """The chosen integral backend cannot represent the requested integrand."""


class ExprSyntaxError(FractalHHError, ValueError):
    """Malformed expression text.

    ``offset`` is the byte offset of the offending token and ``expected``
    the set of token kinds that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = expected
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnsupportedFormError(FractalHHError, ValueError):
    """Syntactically valid input outside the supported fragment."""
