"""Weighted-kernel quadrature ``(1/Gamma(alpha)) int_a^b (b-t)^(alpha-1) f(t) dt``.

The interval is cut at the integrand's breakpoints.  Each panel is refined
geometrically toward both of its ends, so power-type singularities of the
integrand at a panel end cost only a constant number of nodes per decade.
The cell touching the kernel singularity is integrated with Gauss-Jacobi
nodes that absorb the weight exactly.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from ..errors import DomainError
from .backend import Integrand, LfiBackend


@lru_cache(maxsize=None)
def _legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


@lru_cache(maxsize=None)
def _jacobi(n: int, alpha: float):
    # weight (1 + x)^(alpha - 1) on [-1, 1]
    return roots_jacobi(n, 0.0, alpha - 1.0)


def _cells(p: float, q: float, cfg: LfiBackend):
    """Cells of one panel as (end, direction, dlo, dhi) in distance coordinates."""
    half = 0.5 * (q - p)
    out = []
    for end, direction in ((p, 1.0), (q, -1.0)):
        floor = max(abs(end) * 1e-15, half * cfg.grading ** cfg.max_levels)
        levels = 0
        while levels < cfg.max_levels and half * cfg.grading ** (levels + 1) >= floor:
            levels += 1
        hi = half
        for _ in range(levels):
            lo = hi * cfg.grading
            out.append((end, direction, lo, hi))
            hi = lo
        out.append((end, direction, 0.0, hi))
    return out


@lru_cache(maxsize=4096)
def rl_rule(a: float, b: float, alpha: float, breakpoints: tuple[float, ...],
            cfg: LfiBackend, side: str = "right"):
    """Nodes and weights (kernel and ``1/Gamma(alpha)`` included) on ``[a, b]``."""
    if not b > a:
        raise DomainError(f"integration interval must satisfy a < b, got [{a}, {b}]")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    edges = [a] + sorted({float(c) for c in breakpoints if a < c < b}) + [b]
    gx, gw = _legendre(cfg.nodes)
    jx, jw = _jacobi(cfg.nodes, alpha)
    singular_end = b if side == "right" else a
    ts, ws = [], []
    for p, q in zip(edges[:-1], edges[1:]):
        for end, direction, dlo, dhi in _cells(p, q, cfg):
            width = dhi - dlo
            if dlo == 0.0 and end == singular_end and alpha < 1.0:
                d = 0.5 * width * (jx + 1.0)
                t = end + direction * d
                ts.append(t)
                ws.append((0.5 * width) ** alpha * jw)
                continue
            d = dlo + 0.5 * width * (gx + 1.0)
            t = end + direction * d
            if side == "right":
                dist = (b - end) - direction * d
            else:
                dist = (end - a) + direction * d
            ts.append(t)
            ws.append(0.5 * width * gw * dist ** (alpha - 1.0))
    t = np.concatenate(ts)
    w = np.concatenate(ws) / math.gamma(alpha)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def rl_quad(f, a: float, b: float, alpha: float, cfg: LfiBackend | None = None,
            side: str | None = None, extra_breakpoints=()) -> float:
    """Riemann-Liouville-type integral of ``f`` over ``[a, b]``."""
    cfg = cfg or LfiBackend.quadrature()
    side = side or cfg.side
    g = f if isinstance(f, Integrand) else Integrand(f)
    bps = tuple(sorted(set(g.breakpoints) | {float(c) for c in extra_breakpoints}))
    if side == "symmetric":
        return 0.5 * (rl_quad(g, a, b, alpha, cfg, "right", bps)
                      + rl_quad(g, a, b, alpha, cfg, "left", bps))
    t, w = rl_rule(float(a), float(b), float(alpha), bps, cfg, side)
    vals = np.asarray(g(t), dtype=float)
    return float(np.dot(w, vals))
