"""Sampling refuters for generalized s-convexity and a Hoelder-constant estimator.

Both senses check ``f(l1 u + l2 v) <= l1^(alpha s) f(u) + l2^(alpha s) f(v)``.
The second sense ties the weights by ``l1 + l2 = 1``, the first by
``l1^s + l2^s = 1``.  A grid search cannot prove membership; it can only
fail to find a counterexample, which is what ``certified`` reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import ConfigurationError


@dataclass(frozen=True)
class CertGrid:
    n_uv: int = 64
    n_lambda: int = 33
    n_random: int = 256
    seed: int = 0
    tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise ConfigurationError("certification tolerance must be positive")
        if min(self.n_uv, self.n_lambda, self.n_random) < 0:
            raise ConfigurationError("grid sizes must be non-negative")
        if (self.n_uv == 0 or self.n_lambda == 0) and self.n_random == 0:
            raise ConfigurationError("empty certification grid")


@dataclass
class CertReport:
    sense: int
    certified: bool
    max_violation: float
    worst: tuple[float, float, float] | None
    n_checked: int
    nonneg_ok: bool
    notes: list[str] = field(default_factory=list)

    def at_tolerance(self, tol: float) -> bool:
        return self.nonneg_ok and self.max_violation <= tol


def _samples(domain: tuple[float, float], grid: CertGrid):
    lo, hi = map(float, domain)
    if not hi > lo:
        raise ConfigurationError(f"empty domain [{lo}, {hi}]")
    us, vs, ts = [], [], []
    if grid.n_uv and grid.n_lambda:
        pts = np.linspace(lo, hi, grid.n_uv)
        lam = np.linspace(0.0, 1.0, grid.n_lambda)
        U, V, L = np.meshgrid(pts, pts, lam, indexing="ij")
        us.append(U.ravel()), vs.append(V.ravel()), ts.append(L.ravel())
    if grid.n_random:
        rng = np.random.default_rng(grid.seed)
        us.append(rng.uniform(lo, hi, grid.n_random))
        vs.append(rng.uniform(lo, hi, grid.n_random))
        ts.append(rng.uniform(0.0, 1.0, grid.n_random))
    return np.concatenate(us), np.concatenate(vs), np.concatenate(ts)


def _certify(f: Callable, alpha: float, s: float, domain, grid: CertGrid, sense: int,
             require_nonneg: bool) -> CertReport:
    if not 0 < s <= 1:
        raise ConfigurationError(f"s must lie in (0, 1], got {s!r}")
    u, v, t = _samples(domain, grid)
    if sense == 2:
        l1, l2 = t, 1.0 - t
    else:
        l1, l2 = t ** (1.0 / s), (1.0 - t) ** (1.0 / s)
    p = alpha * s
    fu, fv = np.asarray(f(u), float), np.asarray(f(v), float)
    lhs = np.asarray(f(l1 * u + l2 * v), float)
    with np.errstate(invalid="ignore"):
        rhs = np.where(l1 == 0, 0.0, l1 ** p * fu) + np.where(l2 == 0, 0.0, l2 ** p * fv)
        # relative to the magnitude of the bound so that rounding in large values is not flagged
        viol = (lhs - rhs) / np.maximum(1.0, np.abs(rhs))
    notes = []
    bad = ~np.isfinite(viol)
    if bad.any():
        notes.append(f"{int(bad.sum())} non-finite samples ignored")
        viol = np.where(bad, -np.inf, viol)
    i = int(np.argmax(viol))
    max_viol = float(viol[i])
    nonneg_ok = True
    if require_nonneg:
        fmin = float(np.nanmin(np.concatenate([fu, fv])))
        if fmin < 0:
            nonneg_ok = False
            notes.append(f"function takes negative values (min {fmin:.6g})")
    return CertReport(
        sense=sense,
        certified=nonneg_ok and max_viol <= grid.tol,
        max_violation=max_viol,
        worst=(float(u[i]), float(v[i]), float(l1[i])),
        n_checked=int(u.size),
        nonneg_ok=nonneg_ok,
        notes=notes,
    )


def certify_gks2(f: Callable, alpha: float, s: float, domain=(0.0, 1.0),
                 grid: CertGrid | None = None, require_nonneg: bool = True) -> CertReport:
    """Search for violations of second-sense generalized s-convexity on ``domain``."""
    return _certify(f, alpha, s, domain, grid or CertGrid(), 2, require_nonneg)


def certify_gks1(f: Callable, alpha: float, s: float, domain=(0.0, 1.0),
                 grid: CertGrid | None = None, require_nonneg: bool = True) -> CertReport:
    """First-sense variant; weights are ``l1 = t^(1/s)``, ``l2 = (1-t)^(1/s)``."""
    return _certify(f, alpha, s, domain, grid or CertGrid(), 1, require_nonneg)


def estimate_holder(f: Callable, alpha: float, interval=(0.0, 1.0), n_points: int = 257) -> float:
    """``max |f(x) - f(y)| / |x - y|^alpha`` over all pairs of an even grid."""
    if n_points < 2:
        raise ConfigurationError("need at least two sample points")
    lo, hi = map(float, interval)
    if not hi > lo:
        raise ConfigurationError(f"empty interval [{lo}, {hi}]")
    x = np.linspace(lo, hi, n_points)
    fx = np.asarray(f(x), float)
    i, j = np.triu_indices(n_points, k=1)
    ratio = np.abs(fx[i] - fx[j]) / np.abs(x[i] - x[j]) ** alpha
    return float(np.max(ratio))
