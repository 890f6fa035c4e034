"""Closed-form constants of the trapezoid-type bounds."""

from __future__ import annotations

import math

from ..lf_calculus import moment
from ..special_fn import gamma


def endpoint_constant(alpha: float, s: float) -> float:
    """``Gamma(1 + s alpha) / Gamma(1 + (s + 1) alpha)``, the right-hand factor of the chain."""
    return moment(s * alpha, alpha)


def kconst(alpha: float, s: float) -> float:
    """``K(alpha, s)``: closed-form value of the ``t^(alpha s) |1 - 2t|^alpha`` moment.

    ``K(1, 1) = 1/4`` reproduces the classical trapezoid constant.
    """
    sa = s * alpha
    return (moment(sa, alpha)
            + gamma(1.0 + alpha) * gamma(1.0 + sa) / gamma(1.0 + sa + 2.0 * alpha)
            * (0.5 ** sa - 2.0 ** alpha))


def holder_factor(alpha: float, q: float) -> float:
    """``[Gamma(1+p alpha) / (2^alpha Gamma(1+(p+1) alpha))]^(1/p)`` with ``p = q/(q-1)``."""
    p = q / (q - 1.0)
    return (moment(p * alpha, alpha) / 2.0 ** alpha) ** (1.0 / p)


def convexity_factor(alpha: float, s: float, q: float) -> float:
    """``[Gamma(1+s alpha) / (2^alpha Gamma(1+(s+1) alpha))]^(1/q)``."""
    return (endpoint_constant(alpha, s) / 2.0 ** alpha) ** (1.0 / q)


def power_mean(x: float, y: float, q: float) -> float:
    return (abs(x) ** q + abs(y) ** q) ** (1.0 / q)


def midpoint_constant(alpha: float, s: float) -> float:
    """``2^((s-1) alpha) / Gamma(1 + alpha)``, the left-hand factor of the chain."""
    return 2.0 ** ((s - 1.0) * alpha) / math.gamma(1.0 + alpha)
