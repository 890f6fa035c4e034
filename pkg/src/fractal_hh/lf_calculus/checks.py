"""Residual checks for the operator identities: substitution, Newton-Leibniz, parts, Hoelder."""

from __future__ import annotations

import numpy as np

from ..errors import BackendCapabilityError, ConfigurationError, DomainError
from ..func_expr.poly import FractalPoly, OutOfBasis, Term
from .backend import Integrand, LfiBackend, as_integrand, as_poly, require_poly
from .derivative import lfd_poly
from .integral import lfi


def check_substitution(f, c: float, d: float, a: float, b: float, alpha: float,
                       backend: LfiBackend | None = None) -> float:
    """``|lfi(f, g[a, b]) - |d|^alpha lfi(f o g, a, b)|`` for the affine map ``g(t) = c + d t``."""
    backend = backend or LfiBackend.operational()
    if d == 0.0:
        raise DomainError("affine map must have non-zero slope")
    lo, hi = sorted((c + d * a, c + d * b))
    if lo < 0:
        raise DomainError("the image of [a, b] must lie in [0, inf)")
    direct = lfi(f, lo, hi, alpha, backend)
    if backend.is_operational:
        try:
            composed = require_poly(f).compose_affine(c, d)
        except OutOfBasis as exc:
            raise BackendCapabilityError(str(exc)) from exc
    else:
        g = as_integrand(f)
        composed = Integrand(lambda t: g(c + d * np.asarray(t, float)),
                             tuple((mu - c) / d for mu in g.breakpoints))
    return abs(direct - abs(d) ** alpha * lfi(composed, a, b, alpha, backend))


def check_newton_leibniz(g: FractalPoly, a: float, b: float, alpha: float,
                         backend: LfiBackend | None = None) -> float:
    """``|lfi(g^(alpha), a, b) - (g(b) - g(a))|`` with the exact power-rule derivative."""
    g = require_poly(g, "function")
    deriv = lfd_poly(g, alpha)
    return abs(lfi(deriv, a, b, alpha, backend) - (float(g(b)) - float(g(a))))


def _product(f, g, backend: LfiBackend):
    if backend.is_operational:
        try:
            return require_poly(f) * require_poly(g)
        except OutOfBasis as exc:
            raise BackendCapabilityError(f"product leaves the basis: {exc}") from exc
    fi, gi = as_integrand(f), as_integrand(g)
    return Integrand(lambda t: fi(t) * gi(t), tuple(sorted(set(fi.breakpoints) | set(gi.breakpoints))))


def check_parts(f, g, a: float, b: float, alpha: float,
                backend: LfiBackend | None = None) -> float:
    """``|lfi(f g^(alpha)) - [f g]_a^b + lfi(f^(alpha) g)|``."""
    backend = backend or LfiBackend.operational()
    fp, gp = require_poly(f, "factor"), require_poly(g, "factor")
    df, dg = lfd_poly(fp, alpha), lfd_poly(gp, alpha)
    boundary = float(fp(b) * gp(b) - fp(a) * gp(a))
    first = lfi(_product(fp, dg, backend), a, b, alpha, backend)
    second = lfi(_product(df, gp, backend), a, b, alpha, backend)
    return abs(first - boundary + second)


def _abs_power(f, p: float, backend: LfiBackend):
    if backend.is_operational:
        poly = require_poly(f)
        if len(poly.terms) == 1 and poly.terms[0].coeff > 0:
            t = poly.terms[0]
            return FractalPoly(
                (Term(t.coeff ** p, t.shift, t.exponent * _const(p), t.truncated),), poly.alpha, poly.s)
        if poly.is_zero:
            return poly
        raise BackendCapabilityError("|f|^p of a multi-term polynomial leaves the basis")
    fi = as_integrand(f)
    return Integrand(lambda t: np.abs(fi(t)) ** p, fi.breakpoints)


def _const(p: float):
    from fractions import Fraction

    from ..func_expr.poly import SymbolicExponent
    return SymbolicExponent(Fraction(p))


def check_hoelder(f, g, a: float, b: float, alpha: float, p: float, q: float,
                  backend: LfiBackend | None = None) -> float:
    """Slack ``RHS - LHS`` of ``lfi|fg| <= lfi(|f|^p)^(1/p) lfi(|g|^q)^(1/q)``."""
    backend = backend or LfiBackend.quadrature()
    if not (p > 1 and q > 1) or abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise ConfigurationError(f"need conjugate exponents p, q > 1, got p={p!r}, q={q!r}")
    if backend.is_operational:
        fp, gp = require_poly(f), require_poly(g)
        if not (fp.nonneg_coefficients and gp.nonneg_coefficients):
            raise BackendCapabilityError("|f g| of a sign-changing polynomial leaves the basis")
        prod = _product(fp, gp, backend)
    else:
        fi, gi = as_integrand(f), as_integrand(g)
        prod = Integrand(lambda t: np.abs(fi(t) * gi(t)),
                         tuple(sorted(set(fi.breakpoints) | set(gi.breakpoints))))
    lhs = lfi(prod, a, b, alpha, backend)
    rhs = (lfi(_abs_power(f, p, backend), a, b, alpha, backend) ** (1.0 / p)
           * lfi(_abs_power(g, q, backend), a, b, alpha, backend) ** (1.0 / q))
    return rhs - lhs
