"""Summation of slowly convergent hypergeometric-type series with a tail estimate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class SeriesResult:
    value: float
    bound: float
    n_terms: int
    converged: bool
    method: str = "series"

    def __float__(self) -> float:
        return self.value


def _richardson(sums: np.ndarray, exponents: list[float]) -> tuple[float, float]:
    """Extrapolate partial sums taken at doubling term counts."""
    table = [np.asarray(sums, float)]
    for e in exponents:
        prev = table[-1]
        if prev.size < 2:
            break
        table.append(prev[1:] + (prev[1:] - prev[:-1]) / (2.0 ** e - 1.0))
    best, before = table[-1][-1], table[-2][-1]
    return float(best), float(abs(best - before))


def _repeated_average(sums: np.ndarray) -> tuple[float, float]:
    level = np.asarray(sums, float)
    prev = level
    while level.size > 1:
        prev, level = level, 0.5 * (level[1:] + level[:-1])
    return float(level[0]), float(abs(level[0] - prev[-1]))


def sum_series(t0: float, ratio: Callable[[np.ndarray], np.ndarray], *, max_terms: int,
               tol: float, accept: float, tail: str, tail_exponent: float = 1.0) -> SeriesResult:
    """Sum ``t0 * prod ratio(0..n-1)`` over ``n``.

    ``tail`` is ``"monotone"`` (same-sign terms whose tail decays like
    ``N^-tail_exponent``) or ``"alternating"``.  Summation stops at the first
    term below ``tol``; otherwise the partial sums are accelerated and the
    change made by the last acceleration step is reported as the bound.
    """
    n = np.arange(max_terms - 1, dtype=float)
    terms = np.empty(max_terms)
    terms[0] = t0
    terms[1:] = t0 * np.cumprod(ratio(n))
    small = np.flatnonzero(np.abs(terms) < tol)
    if small.size:
        k = int(small[0])
        rest = terms[k]
        if rest == 0.0:
            bound = 0.0
        elif tail == "alternating":
            bound = abs(rest)
        else:
            bound = abs(rest) * max(k, 1) / tail_exponent
        return SeriesResult(float(np.sum(terms[:k])), bound, k, bound <= accept)
    partial = np.cumsum(terms)
    if tail == "alternating":
        value, bound = _repeated_average(partial[-40:])
    else:
        counts = [max_terms >> i for i in range(7, -1, -1) if (max_terms >> i) >= 8]
        sums = np.array([partial[c - 1] for c in counts])
        value, bound = _richardson(sums, [tail_exponent + j for j in range(len(counts) - 1)])
    return SeriesResult(value, bound, max_terms, bound <= accept, "series+extrapolation")
