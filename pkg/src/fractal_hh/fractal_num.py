"""Elements ``a^alpha`` of the fractal real line, stored by their base ``a``.

Keeping the pre-image makes the algebraic identities of the fractal set
(commutativity, associativity, distributivity, neutral elements) hold
exactly up to rounding in the base arithmetic.  Negative bases use the
signed-power convention ``sign(a) |a|^alpha`` so additive inverses exist.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .errors import CompositionError, DomainError


@functools.total_ordering
@dataclass(frozen=True)
class FractalNumber:
    base: float
    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")

    def _same_alpha(self, other: FractalNumber) -> None:
        if not isinstance(other, FractalNumber):
            raise TypeError(f"cannot combine FractalNumber with {type(other).__name__}")
        if self.alpha != other.alpha:
            raise CompositionError(
                f"exponent mismatch: {self.alpha!r} vs {other.alpha!r}"
            )

    def __add__(self, other: FractalNumber) -> FractalNumber:
        return f_add(self, other)

    def __sub__(self, other: FractalNumber) -> FractalNumber:
        return f_add(self, f_neg(other))

    def __mul__(self, other: FractalNumber) -> FractalNumber:
        return f_mul(self, other)

    def __neg__(self) -> FractalNumber:
        return f_neg(self)

    # Base-wise order: a^alpha <= b^alpha iff a <= b.
    def __lt__(self, other: FractalNumber) -> bool:
        self._same_alpha(other)
        return self.base < other.base

    def __float__(self) -> float:
        return real_value(self)

    def __str__(self) -> str:
        return f"({self.base!r})^{self.alpha!r}"


def zero(alpha: float) -> FractalNumber:
    return FractalNumber(0.0, alpha)


def one(alpha: float) -> FractalNumber:
    return FractalNumber(1.0, alpha)


def f_add(x: FractalNumber, y: FractalNumber) -> FractalNumber:
    """``x^alpha + y^alpha = (x + y)^alpha``."""
    x._same_alpha(y)
    return FractalNumber(x.base + y.base, x.alpha)


def f_mul(x: FractalNumber, y: FractalNumber) -> FractalNumber:
    """``x^alpha * y^alpha = (x y)^alpha``."""
    x._same_alpha(y)
    return FractalNumber(x.base * y.base, x.alpha)


def f_neg(x: FractalNumber) -> FractalNumber:
    return FractalNumber(-x.base, x.alpha)


def signed_power(base: float, exponent: float) -> float:
    """``sign(base) * |base|**exponent``."""
    return math.copysign(abs(base) ** exponent, base) if base else 0.0


def real_value(x: FractalNumber) -> float:
    """Image of ``x`` on the ordinary real line."""
    return signed_power(x.base, x.alpha)
