"""Local fractional integral, moment law and the ``|1 - 2t|^alpha`` moments."""

from __future__ import annotations

import math

from scipy.special import betainc

from ..errors import DomainError
from ..func_expr.poly import FractalPoly
from ..special_fn import gamma_ratio
from .backend import LfiBackend, as_integrand, require_poly
from .quadrature import rl_quad
from .series import SeriesResult, sum_series

_DEFAULT_OP = LfiBackend.operational()


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")


def moment(kappa: float, alpha: float) -> float:
    """``Gamma(1 + kappa) / Gamma(1 + kappa + alpha)``: integral of ``t^kappa`` over ``[0, 1]``."""
    _check_alpha(alpha)
    if not kappa > -1.0:
        raise DomainError(f"moment exponent must exceed -1, got {kappa!r}")
    return gamma_ratio(1.0 + kappa, 1.0 + kappa + alpha)


def term_integral(kappa: float, shift: float, a: float, b: float, alpha: float) -> float:
    """Closed-form integral of ``(x - shift)_+^kappa`` over ``[a, b]``.

    With ``P = b - shift`` the right-sided kernel gives
    ``M(kappa) P^(kappa+alpha) I_z(alpha, kappa+1)`` where ``z = (b-a)/P`` and
    ``I`` is the regularized incomplete Beta function (``z = 1`` once the
    shift is inside the interval).
    """
    if shift >= b:
        return 0.0
    span = b - shift
    z = min(1.0, (b - a) / span)
    frac = 1.0 if z == 1.0 else float(betainc(alpha, kappa + 1.0, z))
    return moment(kappa, alpha) * span ** (kappa + alpha) * frac


def lfi_poly(poly: FractalPoly, a: float, b: float, alpha: float) -> float:
    return math.fsum(
        t.coeff * term_integral(poly.kappa(i), t.shift, a, b, alpha)
        for i, t in enumerate(poly.terms)
    )


def lfi(f, a: float, b: float, alpha: float, backend: LfiBackend | None = None) -> float:
    """Local fractional integral of ``f`` over ``[a, b]`` of order ``alpha``.

    Both backends agree on fractal polynomials and reduce to the ordinary
    integral at ``alpha = 1``; see :class:`LfiBackend`.
    """
    backend = backend or _DEFAULT_OP
    a, b = float(a), float(b)
    _check_alpha(alpha)
    if a < 0 or not b > a:
        raise DomainError(f"need 0 <= a < b, got [{a}, {b}]")
    if backend.is_operational:
        return lfi_poly(require_poly(f), a, b, alpha)
    return rl_quad(as_integrand(f), a, b, alpha, backend)


def lemma23_discrepancy(a: float, b: float, k: float, alpha: float) -> float:
    """Gap between the antiderivative-difference form and the kernel value for ``x^(k alpha)``.

    The difference form ``M (b^((k+1)alpha) - a^((k+1)alpha))`` and the
    translation-covariant value agree when ``a = 0`` or ``alpha = 1``.
    """
    kappa = k * alpha
    diff_form = moment(kappa, alpha) * (b ** ((k + 1) * alpha) - a ** ((k + 1) * alpha))
    return abs(diff_form - term_integral(kappa, 0.0, a, b, alpha))


# |1 - 2t|^alpha moments -----------------------------------------------------


def _left_half(kappa: float, alpha: float, cfg: LfiBackend) -> SeriesResult:
    # t^kappa (1 - 2t)^alpha on [0, 1/2]; u = 2t and (1 - u)^alpha expanded binomially
    t0 = 2.0 ** (-kappa - alpha) * moment(kappa, alpha)

    def ratio(n):
        return (n - alpha) / (n + 1.0) * (1.0 + kappa + n) / (1.0 + kappa + n + alpha)

    return sum_series(t0, ratio, max_terms=cfg.series_terms, tol=cfg.series_tol,
                      accept=cfg.series_accept, tail="monotone", tail_exponent=2.0 * alpha)


def _right_half(kappa: float, alpha: float, cfg: LfiBackend) -> SeriesResult:
    # t^kappa (2t - 1)^alpha on [1/2, 1]; u = 2t - 1 and (1 + u)^kappa expanded binomially
    t0 = 2.0 ** (-kappa - alpha) * moment(alpha, alpha)

    def ratio(n):
        return (kappa - n) / (n + 1.0) * (1.0 + alpha + n) / (1.0 + 2.0 * alpha + n)

    return sum_series(t0, ratio, max_terms=cfg.series_terms, tol=cfg.series_tol,
                      accept=cfg.series_accept, tail="alternating")


def abs_moment_detail(kappa: float, alpha: float,
                      backend: LfiBackend | None = None) -> SeriesResult:
    """Integral of ``t^kappa |1 - 2t|^alpha`` over ``[0, 1]`` with diagnostics.

    The operational value is the sum of the two half-interval integrals,
    each a binomial series of termwise moments.
    """
    backend = backend or _DEFAULT_OP
    _check_alpha(alpha)
    if not kappa > -1.0:
        raise DomainError(f"moment exponent must exceed -1, got {kappa!r}")
    if backend.is_operational:
        left, right = _left_half(kappa, alpha, backend), _right_half(kappa, alpha, backend)
        return SeriesResult(left.value + right.value, left.bound + right.bound,
                            left.n_terms + right.n_terms, left.converged and right.converged,
                            left.method if left.n_terms >= right.n_terms else right.method)
    import numpy as np

    def g(t):
        return np.power(t, kappa) * np.abs(1.0 - 2.0 * t) ** alpha

    value = rl_quad(g, 0.0, 1.0, alpha, backend, extra_breakpoints=(0.5,))
    return SeriesResult(value, 0.0, 0, True, "quadrature")


def abs_moment(kappa: float, alpha: float, backend: LfiBackend | None = None) -> float:
    return abs_moment_detail(kappa, alpha, backend).value
