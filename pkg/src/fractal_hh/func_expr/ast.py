"""Expression trees for test functions, with a recursive-descent parser.

Grammar (whitespace insignificant)::

    expr       := term (('+' | '-') term)*
    term       := unary ('*' unary)*
    unary      := ['-'] factor
    factor     := atom ['^' exponent]
    exponent   := '(' param_expr ')' | number | 'a' | 's'
    atom       := 'x' | number | '(' expr ')' | 'abs' '(' expr ')'
    param_expr := arithmetic (+ - * / and unary minus) over numbers, 'a', 's'

``a`` stands for the fractal order alpha.  Exponents may not mention ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import DomainError, ExprSyntaxError, UnsupportedFormError


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Param:
    name: str  # "a" or "s"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Abs:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: "Node"  # parameter expression, x-free


Node = Union[Var, Num, Param, BinOp, Neg, Abs, Pow]

# --------------------------------------------------------------------------
# tokenizer

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_]+")
_KEYWORDS = {"x", "a", "s", "abs"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "x", "a", "s", "abs", an operator char, or "eof"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    raw = text.encode("utf-8")
    # byte offset of each character position
    byte_at = [len(text[:i].encode("utf-8")) for i in range(len(text) + 1)] if not text.isascii() else None

    def boff(i: int) -> int:
        return byte_at[i] if byte_at is not None else i

    tokens: list[_Token] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(_Token("num", m.group(0), boff(i)))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group(0)
            if word not in _KEYWORDS:
                raise ExprSyntaxError(f"unknown identifier {word!r}", boff(i), frozenset(_KEYWORDS))
            tokens.append(_Token(word, word, boff(i)))
            i = m.end()
            continue
        if c in "+-*/^()":
            tokens.append(_Token(c, c, boff(i)))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", boff(i))
    tokens.append(_Token("eof", "", len(raw)))
    return tokens


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            self.fail({kind})
        return self.advance()

    def fail(self, expected: set[str]):
        t = self.tok
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {what}", t.offset, frozenset(expected))

    # main expression

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "*":
            self.advance()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Node:
        if self.tok.kind == "-":
            self.advance()
            return Neg(self.factor())
        return self.factor()

    def factor(self) -> Node:
        node = self.atom()
        if self.tok.kind == "^":
            self.advance()
            node = Pow(node, self.exponent())
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "x":
            self.advance()
            return Var()
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "abs":
            self.advance()
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Abs(node)
        if t.kind in ("a", "s"):
            raise UnsupportedFormError(
                f"parameter {t.text!r} at offset {t.offset} may only appear inside an exponent"
            )
        self.fail({"x", "num", "(", "abs"})

    def exponent(self) -> Node:
        t = self.tok
        if t.kind == "(":
            self.advance()
            node = self.param_expr()
            self.expect(")")
            return node
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.kind in ("a", "s"):
            self.advance()
            return Param(t.kind)
        if t.kind == "x":
            raise UnsupportedFormError(f"exponent depends on x at offset {t.offset}")
        self.fail({"(", "num", "a", "s"})

    # parameter expressions

    def param_expr(self) -> Node:
        node = self.param_term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.param_term())
        return node

    def param_term(self) -> Node:
        node = self.param_unary()
        while self.tok.kind in ("*", "/"):
            op = self.advance().kind
            node = BinOp(op, node, self.param_unary())
        return node

    def param_unary(self) -> Node:
        if self.tok.kind == "-":
            self.advance()
            return Neg(self.param_atom())
        return self.param_atom()

    def param_atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.kind in ("a", "s"):
            self.advance()
            return Param(t.kind)
        if t.kind == "(":
            self.advance()
            node = self.param_expr()
            self.expect(")")
            return node
        if t.kind == "x":
            raise UnsupportedFormError(f"exponent depends on x at offset {t.offset}")
        self.fail({"num", "a", "s", "("})


def parse(text: str) -> Node:
    """Parse ``text`` into an expression tree."""
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "eof":
        p.fail({"+", "-", "*", "eof"})
    return node


# --------------------------------------------------------------------------
# printing


def _atom_text(node: Node) -> str:
    if isinstance(node, (Var, Num, Param, Abs, BinOp)):
        return to_text(node)
    return f"({to_text(node)})"


def to_text(node: Node) -> str:
    """Render ``node`` so that ``parse(to_text(node)) == node``."""
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Param):
        return node.name
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Neg):
        inner = node.operand
        if isinstance(inner, (Var, Num, Param, Abs, BinOp, Pow)):
            return f"-{to_text(inner)}"
        return f"-({to_text(inner)})"
    if isinstance(node, Abs):
        return f"abs({to_text(node.operand)})"
    if isinstance(node, Pow):
        return f"{_atom_text(node.base)}^({to_text(node.exponent)})"
    raise TypeError(f"not an expression node: {node!r}")


# --------------------------------------------------------------------------
# evaluation


def eval_param(node: Node, alpha: float, s: float) -> float:
    """Numeric value of an x-free parameter expression."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Param):
        return alpha if node.name == "a" else s
    if isinstance(node, Neg):
        return -eval_param(node.operand, alpha, s)
    if isinstance(node, BinOp):
        lhs = eval_param(node.left, alpha, s)
        rhs = eval_param(node.right, alpha, s)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            return lhs * rhs
        if rhs == 0.0:
            raise DomainError("division by zero in exponent")
        return lhs / rhs
    raise UnsupportedFormError(f"not a parameter expression: {to_text(node)}")


def is_integer_literal(node: Node) -> bool:
    """True for exponents that are plain integer numbers (no parameters)."""
    return _param_free(node) and float(eval_param(node, 0.0, 0.0)).is_integer()


def _param_free(node: Node) -> bool:
    if isinstance(node, Param):
        return False
    if isinstance(node, Num):
        return True
    if isinstance(node, Neg):
        return _param_free(node.operand)
    if isinstance(node, BinOp):
        return _param_free(node.left) and _param_free(node.right)
    return False


def power(base, exponent: float, integer_exponent: bool):
    """Real power with the truncated-power convention.

    Negative bases are raised normally only for literal integer exponents;
    otherwise they map to 0, i.e. ``(base)_+^exponent``.  At ``base == 0``
    a zero exponent gives 1 and a negative exponent gives ``inf``.
    """
    base = np.asarray(base, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if integer_exponent:
            return np.power(base, exponent)
        out = np.power(np.maximum(base, 0.0), exponent)
        return np.where(base < 0.0, 0.0, out)


def eval_ast(node: Node, x, alpha: float, s: float):
    """Evaluate ``node`` at ``x`` (scalar or array), parameters bound."""
    if isinstance(node, Var):
        return np.asarray(x, dtype=float)
    if isinstance(node, Num):
        return np.full(np.shape(x), node.value)
    if isinstance(node, Param):
        return np.full(np.shape(x), alpha if node.name == "a" else s)
    if isinstance(node, Neg):
        return -eval_ast(node.operand, x, alpha, s)
    if isinstance(node, Abs):
        return np.abs(eval_ast(node.operand, x, alpha, s))
    if isinstance(node, BinOp):
        lhs = eval_ast(node.left, x, alpha, s)
        rhs = eval_ast(node.right, x, alpha, s)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            with np.errstate(invalid="ignore"):
                return np.where((lhs == 0.0) | (rhs == 0.0), 0.0, lhs * rhs)
        raise UnsupportedFormError("division is only allowed inside exponents")
    if isinstance(node, Pow):
        kappa = eval_param(node.exponent, alpha, s)
        return power(eval_ast(node.base, x, alpha, s), kappa, is_integer_literal(node.exponent))
    raise TypeError(f"not an expression node: {node!r}")


def affine_roots(node: Node, alpha: float, s: float) -> set[float]:
    """Zeros of affine subexpressions under ``abs`` or a power.

    These are the points where the function may have a kink or an
    algebraic singularity; quadrature splits its panels there.
    """
    roots: set[float] = set()

    def visit(n: Node) -> None:
        if isinstance(n, (Abs, Pow)):
            inner = n.operand if isinstance(n, Abs) else n.base
            coeffs = _affine(inner, alpha, s)
            if coeffs is not None and coeffs[1] != 0.0:
                roots.add(-coeffs[0] / coeffs[1])
            visit(inner)
        elif isinstance(n, BinOp):
            visit(n.left)
            visit(n.right)
        elif isinstance(n, Neg):
            visit(n.operand)

    visit(node)
    return roots


def _affine(node: Node, alpha: float, s: float) -> tuple[float, float] | None:
    """Return ``(c0, c1)`` if ``node`` equals ``c0 + c1*x``, else None."""
    if isinstance(node, Var):
        return 0.0, 1.0
    if isinstance(node, Num):
        return node.value, 0.0
    if isinstance(node, Neg):
        inner = _affine(node.operand, alpha, s)
        return None if inner is None else (-inner[0], -inner[1])
    if isinstance(node, BinOp) and node.op in "+-*":
        lhs = _affine(node.left, alpha, s)
        rhs = _affine(node.right, alpha, s)
        if lhs is None or rhs is None:
            return None
        if node.op == "+":
            return lhs[0] + rhs[0], lhs[1] + rhs[1]
        if node.op == "-":
            return lhs[0] - rhs[0], lhs[1] - rhs[1]
        if lhs[1] != 0.0 and rhs[1] != 0.0:
            return None
        return lhs[0] * rhs[0], lhs[0] * rhs[1] + lhs[1] * rhs[0]
    if isinstance(node, Pow) and is_integer_literal(node.exponent):
        n = eval_param(node.exponent, alpha, s)
        inner = _affine(node.base, alpha, s)
        if inner is None:
            return None
        if n == 0:
            return 1.0, 0.0
        if n == 1:
            return inner
        if inner[1] == 0.0:
            return inner[0] ** n, 0.0
    return None
