"""Immutable test-function handles binding an expression to ``(alpha, s)``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from . import ast as A
from .poly import FractalPoly, NotPolynomial, lower_to_poly


@dataclass(frozen=True)
class FunctionHandle:
    text: str
    alpha: float
    s: float
    ast: A.Node | None = None
    poly: FractalPoly | None = None
    not_poly_reason: str = ""

    def __call__(self, x):
        """Evaluate at a scalar (returns float) or an array (returns array)."""
        arr = np.asarray(x, dtype=float)
        if arr.size and np.nanmin(arr) < 0.0:
            raise DomainError(f"functions are defined on [0, inf); got x = {np.nanmin(arr)!r}")
        if self.poly is not None:
            out = self.poly(arr)
        else:
            out = A.eval_ast(self.ast, arr, self.alpha, self.s)
        return float(out) if np.ndim(out) == 0 else out

    def eval_ast(self, x):
        if self.ast is None:
            return self.poly(np.asarray(x, dtype=float))
        return A.eval_ast(self.ast, np.asarray(x, dtype=float), self.alpha, self.s)

    @property
    def breakpoints(self) -> set[float]:
        if self.poly is not None:
            return self.poly.breakpoints
        return {r for r in A.affine_roots(self.ast, self.alpha, self.s) if r > 0}

    def rebind(self, alpha: float, s: float | None = None) -> FunctionHandle:
        s = self.s if s is None else s
        if alpha == self.alpha and s == self.s:
            return self
        if self.ast is None:
            return FunctionHandle.from_poly(self.poly.rebind(alpha, s), self.text)
        return make_function(self.ast, alpha, s, text=self.text)

    @classmethod
    def from_poly(cls, poly: FractalPoly, text: str | None = None) -> FunctionHandle:
        return cls(text or poly.to_text(), poly.alpha, poly.s, None, poly)


def make_function(expr: str | A.Node, alpha: float, s: float = 1.0,
                  text: str | None = None) -> FunctionHandle:
    """Parse (if needed) and lower ``expr``; the polynomial form is kept when it exists."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    node = A.parse(expr) if isinstance(expr, str) else expr
    if text is None:
        text = expr if isinstance(expr, str) else A.to_text(node)
    lowered = lower_to_poly(node, alpha, s)
    if isinstance(lowered, NotPolynomial):
        return FunctionHandle(text, alpha, s, node, None, lowered.reason)
    return FunctionHandle(text, alpha, s, node, lowered)


def eval(f: FunctionHandle, x: float) -> float:  # noqa: A001 - mirrors the operation name
    """Pointwise value of ``f`` at ``x >= 0``."""
    return f(float(x))
