"""Backend configuration and integrand normalization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import BackendCapabilityError, ConfigurationError
from ..func_expr.handle import FunctionHandle
from ..func_expr.poly import FractalPoly

OPERATIONAL = "operational"
QUADRATURE = "quadrature"
_SIDES = ("right", "left", "symmetric")


@dataclass(frozen=True)
class LfiBackend:
    """How the local fractional integral is realized.

    ``operational`` evaluates fractal polynomials in closed form.
    ``quadrature`` integrates ``(1/Gamma(alpha)) (b - t)^(alpha-1) f(t)``
    numerically; ``side`` selects the kernel end (``left`` puts the
    singularity at ``a``, ``symmetric`` averages the two).
    """

    variant: str = OPERATIONAL
    nodes: int = 24
    grading: float = 0.15
    max_levels: int = 40
    series_terms: int = 4096
    series_tol: float = 1e-14
    series_accept: float = 1e-12
    side: str = "right"

    def __post_init__(self) -> None:
        if self.variant not in (OPERATIONAL, QUADRATURE):
            raise ConfigurationError(f"unknown backend variant {self.variant!r}")
        if self.nodes < 8:
            raise ConfigurationError("quadrature node count must be at least 8")
        if self.series_terms < 16:
            raise ConfigurationError("series truncation must allow at least 16 terms")
        if not 0.0 < self.grading < 1.0:
            raise ConfigurationError("mesh grading ratio must lie in (0, 1)")
        if self.max_levels < 1:
            raise ConfigurationError("max_levels must be positive")
        if self.series_tol <= 0 or self.series_accept <= 0:
            raise ConfigurationError("series tolerances must be positive")
        if self.side not in _SIDES:
            raise ConfigurationError(f"kernel side must be one of {_SIDES}")
        if self.variant == OPERATIONAL and self.side != "right":
            raise BackendCapabilityError(
                "the operational backend realizes only the right-sided kernel")

    @property
    def is_operational(self) -> bool:
        return self.variant == OPERATIONAL

    @property
    def short_name(self) -> str:
        return "op" if self.is_operational else "quad"

    @classmethod
    def operational(cls, **kw) -> LfiBackend:
        return cls(OPERATIONAL, **kw)

    @classmethod
    def quadrature(cls, **kw) -> LfiBackend:
        return cls(QUADRATURE, **kw)

    @classmethod
    def from_name(cls, name: str, **kw) -> LfiBackend:
        aliases = {"op": OPERATIONAL, OPERATIONAL: OPERATIONAL,
                   "quad": QUADRATURE, QUADRATURE: QUADRATURE}
        if name not in aliases:
            raise ConfigurationError(f"unknown backend {name!r}")
        return cls(aliases[name], **kw)


@dataclass(frozen=True)
class Integrand:
    """A plain callable plus the points where it may fail to be smooth."""

    fn: Callable
    breakpoints: tuple[float, ...] = ()

    def __call__(self, x):
        return self.fn(x)


def as_poly(f) -> FractalPoly | None:
    if isinstance(f, FractalPoly):
        return f
    if isinstance(f, FunctionHandle):
        return f.poly
    return None


def as_integrand(f) -> Integrand:
    if isinstance(f, Integrand):
        return f
    if isinstance(f, (FunctionHandle, FractalPoly)):
        return Integrand(f, tuple(sorted(f.breakpoints)))
    if callable(f):
        return Integrand(f)
    raise TypeError(f"cannot integrate object of type {type(f).__name__}")


def require_poly(f, what: str = "integrand") -> FractalPoly:
    poly = as_poly(f)
    if poly is None:
        reason = getattr(f, "not_poly_reason", "") or "not a fractal polynomial"
        raise BackendCapabilityError(f"operational backend cannot handle this {what}: {reason}")
    return poly
