"""Verification of the Hermite-Hadamard chain, the trapezoid identity and the two bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import BackendCapabilityError, ConfigurationError, DomainError, FractalHHError
from ..func_expr import CertGrid, FractalPoly, FunctionHandle, certify_gks2, estimate_holder
from ..func_expr.handle import make_function
from ..lf_calculus import (Integrand, LfiBackend, abs_moment_detail, derivative_values, lfi,
                           lfd_poly, rl_quad)
from .constants import (convexity_factor, endpoint_constant, holder_factor, kconst,
                        midpoint_constant, power_mean)

THEOREMS = ("thm31", "lemma31", "thm32", "thm33")
INJECT_FACTOR = 0.9


@dataclass(frozen=True)
class TheoremCase:
    """One verification instance; ``fn`` is expression text or a prepared function."""

    theorem: str
    alpha: float
    s: float
    a: float
    b: float
    fn: Any
    q: float = 1.0
    backend: LfiBackend = field(default_factory=LfiBackend.operational)
    tol: float = 1e-9
    case_id: str = ""
    waive_certification: bool = False
    inject_violation: bool = False
    cert_grid: CertGrid = field(default_factory=CertGrid)

    def __post_init__(self) -> None:
        if self.theorem not in THEOREMS:
            raise ConfigurationError(f"unknown theorem id {self.theorem!r}")
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigurationError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not 0.0 < self.s <= 1.0:
            raise ConfigurationError(f"s must lie in (0, 1], got {self.s!r}")
        if not 0.0 <= self.a < self.b:
            raise ConfigurationError(f"need 0 <= a < b, got [{self.a}, {self.b}]")
        if self.tol <= 0:
            raise ConfigurationError("tolerance must be positive")
        if self.theorem == "thm32" and self.q < 1.0:
            raise ConfigurationError(f"q must be >= 1, got {self.q!r}")
        if self.theorem == "thm33" and self.q <= 1.0:
            raise ConfigurationError(f"q must be > 1, got {self.q!r}")

    @property
    def fn_text(self) -> str:
        if isinstance(self.fn, str):
            return self.fn
        if isinstance(self.fn, FunctionHandle):
            return self.fn.text
        return self.fn.to_text()

    def handle(self) -> FunctionHandle:
        if isinstance(self.fn, str):
            return make_function(self.fn, self.alpha, self.s)
        if isinstance(self.fn, FractalPoly):
            return FunctionHandle.from_poly(self.fn)
        return self.fn


@dataclass
class VerificationResult:
    case_id: str
    theorem: str
    alpha: float
    s: float
    q: float
    a: float
    b: float
    fn_text: str
    backend: str
    lhs: float | None = None
    mid: float | None = None
    rhs: float | None = None
    slack_left: float | None = None
    slack_right: float | None = None
    residual: float | None = None
    status: str = "pass"
    note: str = ""
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def min_slack(self) -> float | None:
        if self.residual is not None:
            return -self.residual
        vals = [v for v in (self.slack_left, self.slack_right) if v is not None]
        return min(vals) if vals else None


def _blank(case: TheoremCase) -> VerificationResult:
    return VerificationResult(case.case_id or f"{case.theorem}-00000", case.theorem, case.alpha,
                              case.s, case.q, case.a, case.b, case.fn_text,
                              case.backend.short_name)


def _rejected(res: VerificationResult, reason: str) -> VerificationResult:
    res.status = "rejected"
    res.note = reason
    return res


def _certify(fn, case: TheoremCase, what: str) -> tuple[bool, str, dict]:
    report = certify_gks2(fn, case.alpha, case.s, (case.a, case.b), case.cert_grid,
                          require_nonneg=not case.waive_certification)
    info = {f"{what}_max_violation": report.max_violation}
    if report.certified or case.waive_certification:
        return True, "", info
    why = "; ".join(report.notes) or f"max violation {report.max_violation:.3g}"
    return False, f"{what} not certified generalized s-convex (second sense): {why}", info


def _finish(res: VerificationResult, slacks, tol: float) -> VerificationResult:
    ok = all(v >= -tol for v in slacks if v is not None)
    res.status = "pass" if ok else "violation"
    return res


def verify_thm31(case: TheoremCase) -> VerificationResult:
    """Midpoint bound <= normalized integral <= endpoint bound."""
    res = _blank(case)
    f = case.handle()
    ok, why, info = _certify(f, case, "f")
    res.diagnostics.update(info)
    if not ok:
        return _rejected(res, why)
    a, b, al = case.a, case.b, case.alpha
    res.lhs = midpoint_constant(al, case.s) * f(0.5 * (a + b))
    res.mid = lfi(f, a, b, al, case.backend) / (b - a) ** al
    res.rhs = endpoint_constant(al, case.s) * (f(a) + f(b))
    if case.inject_violation:
        res.rhs *= INJECT_FACTOR
    res.slack_left = res.mid - res.lhs
    res.slack_right = res.rhs - res.mid
    return _finish(res, (res.slack_left, res.slack_right), case.tol)


def _derivative(f: FunctionHandle, alpha: float):
    """Callable ``f^(alpha)`` with breakpoints; exact when ``f`` is a fractal polynomial."""
    if f.poly is not None:
        d = lfd_poly(f.poly, alpha)
        return Integrand(d, tuple(sorted(d.breakpoints))), "exact"
    if alpha == 1.0:
        return Integrand(lambda x: derivative_values(f, x), tuple(sorted(f.breakpoints))), "numeric"
    raise BackendCapabilityError(
        f"f^(alpha) needs a fractal polynomial when alpha < 1 ({f.not_poly_reason})")


def trapezoid_defect(f: FunctionHandle, a: float, b: float, alpha: float,
                     backend: LfiBackend) -> float:
    """Signed ``(f(a)+f(b))/2^alpha - Gamma(1+alpha)/(b-a)^alpha * lfi(f)``."""
    integral = lfi(f, a, b, alpha, backend)
    return (f(a) + f(b)) / 2.0 ** alpha - math.gamma(1.0 + alpha) / (b - a) ** alpha * integral


def trapezoid_kernel_integral(deriv: Integrand, a: float, b: float, alpha: float,
                              backend: LfiBackend) -> float:
    """Integral over ``t in [0, 1]`` of ``sgn(1-2t)|1-2t|^alpha f^(alpha)(ta + (1-t)b)``."""
    def g(t):
        t = np.asarray(t, float)
        w = 1.0 - 2.0 * t
        return np.sign(w) * np.abs(w) ** alpha * deriv(t * a + (1.0 - t) * b)

    mapped = tuple((b - mu) / (b - a) for mu in deriv.breakpoints if a < mu < b)
    if backend.is_operational:
        # interval-additive: each half carries its own kernel
        left = rl_quad(Integrand(g, mapped), 0.0, 0.5, alpha, backend, side="right")
        right = rl_quad(Integrand(g, mapped), 0.5, 1.0, alpha, backend, side="right")
        return left + right
    return rl_quad(Integrand(g, mapped), 0.0, 1.0, alpha, backend, extra_breakpoints=(0.5,))


def verify_lemma31(case: TheoremCase) -> VerificationResult:
    """Trapezoid identity: defect expressed as a kernel integral of ``f^(alpha)``."""
    res = _blank(case)
    f = case.handle()
    try:
        deriv, how = _derivative(f, case.alpha)
    except BackendCapabilityError as exc:
        return _rejected(res, str(exc))
    a, b, al = case.a, case.b, case.alpha
    res.lhs = trapezoid_defect(f, a, b, al, case.backend)
    res.rhs = (b - a) ** al / 2.0 ** al * trapezoid_kernel_integral(deriv, a, b, al, case.backend)
    if case.inject_violation:
        res.rhs *= INJECT_FACTOR
    res.residual = abs(res.lhs - res.rhs)
    res.diagnostics["derivative"] = how
    # the same identity with both factors 2^alpha replaced by 2
    half = 2.0 ** al / 2.0
    res.diagnostics["residual_factor_two"] = abs(
        (f(a) + f(b)) / 2.0 - math.gamma(1.0 + al) / (b - a) ** al * lfi(f, a, b, al, case.backend)
        - half * res.rhs)
    res.status = "pass" if res.residual <= case.tol else "violation"
    return res


def _bound_case(case: TheoremCase):
    res = _blank(case)
    f = case.handle()
    try:
        deriv, how = _derivative(f, case.alpha)
    except BackendCapabilityError as exc:
        return res, None, None, str(exc)
    q = case.q
    target = Integrand(lambda x: np.abs(deriv(x)) ** q, deriv.breakpoints)
    ok, why, info = _certify(target, case, "|f^(alpha)|^q")
    res.diagnostics.update(info)
    res.diagnostics["derivative"] = how
    try:
        res.diagnostics["holder_estimate"] = estimate_holder(deriv, case.alpha, (case.a, case.b), 129)
    except FractalHHError:
        pass
    if not ok:
        return res, None, None, why
    return res, f, deriv, ""


def verify_thm32(case: TheoremCase) -> VerificationResult:
    """Trapezoid defect against the ``q >= 1`` bound built from ``K(alpha, s)``."""
    res, f, deriv, why = _bound_case(case)
    if f is None:
        return _rejected(res, why)
    a, b, al, s, q = case.a, case.b, case.alpha, case.s, case.q
    da, db = abs(float(deriv(np.array([a]))[0])), abs(float(deriv(np.array([b]))[0]))
    k = kconst(al, s)
    scale = (b - a) ** al / 2.0 ** al
    ratio = math.gamma(1.0 + al) / math.gamma(1.0 + 2.0 * al)
    defect = abs(trapezoid_defect(f, a, b, al, case.backend))
    bound = scale * ratio ** ((q - 1.0) / q) * k ** (1.0 / q) * power_mean(da, db, q)
    if case.inject_violation:
        bound *= INJECT_FACTOR
    res.lhs, res.rhs = defect, bound
    res.slack_right = bound - defect
    # proof-text variant: full Gamma ratio and bracket, |f'(b)| not raised to q
    bound_36 = scale * ratio * k * (da ** q + db)
    moment_k = abs_moment_detail(s * al, al, case.backend)
    res.diagnostics.update({
        "K": k, "K_abs_moment": moment_k.value,
        "K_rel_diff": abs(k - moment_k.value) / abs(k) if k else math.inf,
        "abs_moment_bound": moment_k.bound, "abs_moment_converged": moment_k.converged,
        "bound_proof_variant": bound_36, "slack_proof_variant": bound_36 - defect,
    })
    return _finish(res, (res.slack_right,), case.tol)


def verify_thm33(case: TheoremCase) -> VerificationResult:
    """Trapezoid defect against the ``q > 1`` bound with midpoint derivative values."""
    res, f, deriv, why = _bound_case(case)
    if f is None:
        return _rejected(res, why)
    a, b, al, s, q = case.a, case.b, case.alpha, case.s, case.q
    da, dm, db = (abs(float(v)) for v in deriv(np.array([a, 0.5 * (a + b), b])))
    scale = (b - a) ** al / 2.0 ** al
    braces = power_mean(da, dm, q) + power_mean(dm, db, q)
    bound = scale * holder_factor(al, q) * convexity_factor(al, s, q) * braces
    if case.inject_violation:
        bound *= INJECT_FACTOR
    defect = abs(trapezoid_defect(f, a, b, al, case.backend))
    res.lhs, res.rhs = defect, bound
    res.slack_right = bound - defect
    return _finish(res, (res.slack_right,), case.tol)


_DISPATCH = {"thm31": verify_thm31, "lemma31": verify_lemma31,
             "thm32": verify_thm32, "thm33": verify_thm33}


def verify(case: TheoremCase) -> VerificationResult:
    """Run one case; library errors become an ``error`` row instead of propagating."""
    try:
        return _DISPATCH[case.theorem](case)
    except (FractalHHError, DomainError, ValueError, ArithmeticError) as exc:
        res = _blank(case)
        res.status = "error"
        res.note = f"{type(exc).__name__}: {exc}"
        return res
