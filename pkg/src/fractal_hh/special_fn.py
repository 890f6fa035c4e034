"""Gamma and Beta functions on the positive real axis.

Every constant appearing in the inequalities is a ratio of Gamma values at
arguments ``1 + k*alpha``; these helpers only need to be accurate there, so
no reflection formula is provided.
"""

from __future__ import annotations

import math

from .errors import DomainError

# math.gamma overflows just above 171.6
_DIRECT_LIMIT = 170.0


def _check(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"Gamma argument must be positive and finite, got {x!r}")
    return x


def gamma(x: float) -> float:
    """Gamma function for ``x > 0``."""
    return math.gamma(_check(x))


def log_gamma(x: float) -> float:
    """Natural logarithm of the Gamma function for ``x > 0``."""
    return math.lgamma(_check(x))


def gamma_ratio(p: float, q: float) -> float:
    """Return ``Gamma(p) / Gamma(q)`` without intermediate overflow.

    Small arguments use the direct quotient, which is a few ulps more accurate
    than differencing two log-Gamma values; large ones go through logs.
    """
    p, q = _check(p), _check(q)
    if p <= _DIRECT_LIMIT and q <= _DIRECT_LIMIT:
        return math.gamma(p) / math.gamma(q)
    return math.exp(math.lgamma(p) - math.lgamma(q))


def beta(p: float, q: float) -> float:
    """Euler Beta function ``Gamma(p) Gamma(q) / Gamma(p + q)``."""
    p, q = _check(p), _check(q)
    if p + q <= _DIRECT_LIMIT:
        return math.gamma(p) * math.gamma(q) / math.gamma(p + q)
    return math.exp(math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q))
