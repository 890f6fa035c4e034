"""Fractal-polynomial normal form ``sum c_i (x - mu_i)_+^{kappa_i}``.

Exponents are symbolic, ``kappa = j + k*alpha + l*alpha*s`` with rational
``j, k, l``, so the power rule can lower an exponent by ``alpha`` without
losing track of its shape.  A polynomial is bound to concrete ``(alpha, s)``
for evaluation.

Canonical form (on the domain ``x >= 0``):

* a term is *full* when its shift is ``<= 0`` or its exponent is a plain
  non-negative integer; full integer-exponent terms are expanded into
  monomials at shift 0, so every basis function is non-negative;
* a term with a positive shift and a non-integer exponent is *truncated*:
  it vanishes for ``x < mu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..errors import DomainError
from . import ast as A


class OutOfBasis(Exception):
    """Raised when an operation leaves the fractal-polynomial basis."""


@dataclass(frozen=True, order=True)
class SymbolicExponent:
    j: Fraction = Fraction(0)
    k: Fraction = Fraction(0)
    l: Fraction = Fraction(0)

    def value(self, alpha: float, s: float) -> float:
        return float(self.j) + float(self.k) * alpha + float(self.l) * alpha * s

    @property
    def is_constant(self) -> bool:
        return self.k == 0 and self.l == 0

    @property
    def is_natural(self) -> bool:
        """Plain non-negative integer (no alpha or s dependence)."""
        return self.is_constant and self.j.denominator == 1 and self.j >= 0

    @property
    def is_zero(self) -> bool:
        return self.is_constant and self.j == 0

    def __add__(self, other: SymbolicExponent) -> SymbolicExponent:
        return SymbolicExponent(self.j + other.j, self.k + other.k, self.l + other.l)

    def __sub__(self, other: SymbolicExponent) -> SymbolicExponent:
        return SymbolicExponent(self.j - other.j, self.k - other.k, self.l - other.l)

    def __mul__(self, other: SymbolicExponent) -> SymbolicExponent:
        if self.is_constant:
            c, e = self.j, other
        elif other.is_constant:
            c, e = other.j, self
        else:
            raise OutOfBasis("product of two parameter-dependent exponents")
        return SymbolicExponent(c * e.j, c * e.k, c * e.l)

    def __str__(self) -> str:
        parts = []
        if self.j:
            parts.append(str(self.j))
        if self.k:
            parts.append(f"{self.k}*a")
        if self.l:
            parts.append(f"{self.l}*a*s")
        return " + ".join(parts) or "0"


ZERO = SymbolicExponent()
ONE = SymbolicExponent(Fraction(1))
ALPHA = SymbolicExponent(k=Fraction(1))


def natural(n: int) -> SymbolicExponent:
    return SymbolicExponent(Fraction(n))


@dataclass(frozen=True)
class Term:
    coeff: float
    shift: float
    exponent: SymbolicExponent
    truncated: bool = False

    @property
    def key(self) -> tuple:
        return (self.shift, self.exponent, self.truncated)


@dataclass(frozen=True)
class NotPolynomial:
    """Lowering failed; the function can only be integrated numerically."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class FractalPoly:
    terms: tuple[Term, ...]
    alpha: float
    s: float = 1.0
    _kappas: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_kappas", tuple(t.exponent.value(self.alpha, self.s) for t in self.terms)
        )

    # construction helpers

    @classmethod
    def build(cls, terms: Iterable[Term], alpha: float, s: float = 1.0) -> FractalPoly:
        return cls(_canonical(terms), alpha, s)

    @classmethod
    def constant(cls, c: float, alpha: float, s: float = 1.0) -> FractalPoly:
        return cls.build([Term(c, 0.0, ZERO)], alpha, s)

    @classmethod
    def monomial(cls, exponent: SymbolicExponent, alpha: float, s: float = 1.0,
                 coeff: float = 1.0, shift: float = 0.0) -> FractalPoly:
        return cls.build([Term(coeff, shift, exponent, shift > 0 and not exponent.is_natural)], alpha, s)

    def rebind(self, alpha: float, s: float | None = None) -> FractalPoly:
        """Same terms under new parameters (exponents frozen at lowering stay fixed)."""
        return FractalPoly.build(self.terms, alpha, self.s if s is None else s)

    # evaluation

    def kappa(self, i: int) -> float:
        return self._kappas[i]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        total = np.zeros(np.shape(x))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            for term, kappa in zip(self.terms, self._kappas):
                base = x - term.shift
                if term.truncated:
                    vals = np.where(base < 0.0, 0.0, np.power(np.maximum(base, 0.0), kappa))
                elif term.exponent.is_natural:
                    vals = np.power(base, kappa)
                else:
                    vals = np.power(np.maximum(base, 0.0), kappa)
                total = total + np.where(vals == 0.0, 0.0, term.coeff * vals)
        return total

    @property
    def breakpoints(self) -> set[float]:
        return {t.shift for t in self.terms if t.shift > 0}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def nonneg_coefficients(self) -> bool:
        return all(t.coeff >= 0 for t in self.terms)

    # algebra

    def __add__(self, other: FractalPoly) -> FractalPoly:
        return FractalPoly.build(self.terms + other.terms, self.alpha, self.s)

    def __neg__(self) -> FractalPoly:
        return self.scale(-1.0)

    def __sub__(self, other: FractalPoly) -> FractalPoly:
        return self + (-other)

    def scale(self, c: float) -> FractalPoly:
        return FractalPoly.build((replace(t, coeff=c * t.coeff) for t in self.terms), self.alpha, self.s)

    def __mul__(self, other: FractalPoly) -> FractalPoly:
        """Pointwise product; raises :class:`OutOfBasis` when not representable."""
        out: list[Term] = []
        for t1 in self.terms:
            for t2 in other.terms:
                out.extend(_mul_terms(t1, t2))
        return FractalPoly.build(out, self.alpha, self.s)

    def compose_affine(self, c: float, d: float) -> FractalPoly:
        """The polynomial ``t -> self(c + d*t)`` on ``t >= 0``."""
        if d == 0.0:
            raise DomainError("affine map must have non-zero slope")
        out: list[Term] = []
        for term in self.terms:
            if term.exponent.is_natural:
                # (c + d t - mu)^n, expanded as a polynomial in t
                n = int(term.exponent.j)
                c0 = c - term.shift
                for i in range(n + 1):
                    coeff = term.coeff * math.comb(n, i) * c0 ** (n - i) * d ** i
                    out.append(Term(coeff, 0.0, natural(i)))
                continue
            if d < 0.0:
                raise OutOfBasis("reflection of a non-integer power leaves the basis")
            kappa = term.exponent.value(self.alpha, self.s)
            new_shift = (term.shift - c) / d
            out.append(Term(term.coeff * d ** kappa, new_shift, term.exponent,
                            term.truncated or new_shift > 0))
        return FractalPoly.build(out, self.alpha, self.s)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            if t.shift == 0:
                base = "x"
            elif t.shift > 0:
                base = f"(x - {t.shift!r})"
            else:
                base = f"(x + {-t.shift!r})"
            parts.append(f"{t.coeff!r}*{base}^({t.exponent})" + ("[+]" if t.truncated else ""))
        return " + ".join(parts)


def _mul_terms(t1: Term, t2: Term) -> list[Term]:
    if t1.exponent.is_zero and not t1.truncated:
        return [replace(t2, coeff=t1.coeff * t2.coeff)]
    if t2.exponent.is_zero and not t2.truncated:
        return [replace(t1, coeff=t1.coeff * t2.coeff)]
    if t1.shift == t2.shift:
        return [Term(t1.coeff * t2.coeff, t1.shift, t1.exponent + t2.exponent,
                     t1.truncated or t2.truncated)]
    # a monomial times a truncated term: re-expand the monomial about the shift
    for mono, trunc in ((t1, t2), (t2, t1)):
        if mono.exponent.is_natural and mono.shift == 0.0 and trunc.truncated:
            n = int(mono.exponent.j)
            mu = trunc.shift
            return [
                Term(mono.coeff * trunc.coeff * math.comb(n, i) * mu ** (n - i), mu,
                     trunc.exponent + natural(i), True)
                for i in range(n + 1)
            ]
    raise OutOfBasis("product of powers with different shifts")


def _canonical(terms: Iterable[Term]) -> tuple[Term, ...]:
    acc: dict[tuple, float] = {}
    for t in terms:
        if t.coeff == 0.0:
            continue
        shift, truncated = t.shift, t.truncated
        if shift <= 0.0:
            truncated = False
        if t.exponent.is_natural and not truncated:
            if shift == 0.0:
                pieces = [(natural(int(t.exponent.j)), t.coeff)]
            else:
                n = int(t.exponent.j)
                pieces = [(natural(i), t.coeff * math.comb(n, i) * (-shift) ** (n - i))
                          for i in range(n + 1)]
            for exp, c in pieces:
                key = (0.0, exp, False)
                acc[key] = acc.get(key, 0.0) + c
            continue
        if t.exponent.is_zero and not truncated:
            key = (0.0, ZERO, False)
        else:
            key = (shift, t.exponent, truncated)
        acc[key] = acc.get(key, 0.0) + t.coeff
    return tuple(
        Term(c, key[0], key[1], key[2])
        for key, c in sorted(acc.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
        if c != 0.0
    )


# --------------------------------------------------------------------------
# lowering


def _param_poly(node: A.Node) -> dict[tuple[int, int], Fraction]:
    """Parameter expression as a polynomial in (a, s) with rational coefficients."""
    if isinstance(node, A.Num):
        return {(0, 0): Fraction(repr(node.value))}
    if isinstance(node, A.Param):
        return {(1, 0): Fraction(1)} if node.name == "a" else {(0, 1): Fraction(1)}
    if isinstance(node, A.Neg):
        return {m: -c for m, c in _param_poly(node.operand).items()}
    if isinstance(node, A.BinOp):
        lhs, rhs = _param_poly(node.left), _param_poly(node.right)
        if node.op in "+-":
            sign = 1 if node.op == "+" else -1
            out = dict(lhs)
            for m, c in rhs.items():
                out[m] = out.get(m, Fraction(0)) + sign * c
            return {m: c for m, c in out.items() if c}
        if node.op == "*":
            out: dict[tuple[int, int], Fraction] = {}
            for (i1, j1), c1 in lhs.items():
                for (i2, j2), c2 in rhs.items():
                    m = (i1 + i2, j1 + j2)
                    out[m] = out.get(m, Fraction(0)) + c1 * c2
            return {m: c for m, c in out.items() if c}
        if set(rhs) - {(0, 0)} or not rhs:
            raise OutOfBasis("division by a parameter-dependent or zero quantity")
        return {m: c / rhs[(0, 0)] for m, c in lhs.items()}
    raise OutOfBasis(f"not a parameter expression: {node!r}")


def symbolic_exponent(node: A.Node) -> SymbolicExponent:
    poly = _param_poly(node)
    if set(poly) - {(0, 0), (1, 0), (1, 1)}:
        raise OutOfBasis(f"exponent {A.to_text(node)} is not of the form j + k*a + l*a*s")
    return SymbolicExponent(poly.get((0, 0), Fraction(0)), poly.get((1, 0), Fraction(0)),
                            poly.get((1, 1), Fraction(0)))


def _lower(node: A.Node, alpha: float, s: float) -> FractalPoly:
    if isinstance(node, A.Num):
        return FractalPoly.constant(node.value, alpha, s)
    if isinstance(node, A.Var):
        return FractalPoly.monomial(ONE, alpha, s)
    if isinstance(node, A.Neg):
        return -_lower(node.operand, alpha, s)
    if isinstance(node, A.BinOp):
        lhs, rhs = _lower(node.left, alpha, s), _lower(node.right, alpha, s)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            return lhs * rhs
        raise OutOfBasis("division outside an exponent")
    if isinstance(node, A.Abs):
        inner = _lower(node.operand, alpha, s)
        signs = {t.coeff > 0 for t in inner.terms}
        if len(signs) > 1:
            raise OutOfBasis("abs of a sign-changing combination")
        return inner if signs != {False} else -inner
    if isinstance(node, A.Pow):
        return _lower_pow(node, alpha, s)
    raise OutOfBasis(f"unsupported node {node!r}")


def _lower_pow(node: A.Pow, alpha: float, s: float) -> FractalPoly:
    base = _lower(node.base, alpha, s)
    if A.is_integer_literal(node.exponent):
        n = int(A.eval_param(node.exponent, alpha, s))
        if 0 <= n <= 64:
            out = FractalPoly.constant(1.0, alpha, s)
            for _ in range(n):
                out = out * base
            return out
    try:
        exp = symbolic_exponent(node.exponent)
    except OutOfBasis:
        # shapes such as a bare ``s`` are frozen at the bound parameters
        exp = SymbolicExponent(Fraction(A.eval_param(node.exponent, alpha, s)))
    e_val = exp.value(alpha, s)
    terms = base.terms
    if not terms:
        if e_val <= 0:
            raise OutOfBasis("non-positive power of zero")
        return base
    # affine c0 + c1*x  ->  c1 * (x - mu)
    if (len(terms) == 2 and terms[0].exponent.is_zero and terms[1].exponent == ONE
            and terms[1].shift == 0.0):
        c0, c1 = terms[0].coeff, terms[1].coeff
        terms = (Term(c1, -c0 / c1, ONE, False),)
    if len(terms) != 1:
        raise OutOfBasis("non-integer power of a sum")
    t = terms[0]
    if t.coeff < 0:
        raise OutOfBasis("non-integer power of a negative or left-truncated base")
    new_exp = t.exponent * exp
    truncated = t.truncated or t.shift > 0
    return FractalPoly.build([Term(t.coeff ** e_val, t.shift, new_exp, truncated)], alpha, s)


def lower_to_poly(node: A.Node, alpha: float, s: float = 1.0) -> FractalPoly | NotPolynomial:
    """Normal form of ``node`` as a function on ``[0, inf)``, or :class:`NotPolynomial`."""
    try:
        return _lower(node, alpha, s)
    except OutOfBasis as exc:
        return NotPolynomial(str(exc))
