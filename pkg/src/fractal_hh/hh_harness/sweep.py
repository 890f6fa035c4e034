"""Parameter sweeps over theorem cases with a deterministic summary."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from ..errors import ConfigurationError
from ..func_expr import CertGrid
from ..lf_calculus import LfiBackend
from .core import THEOREMS, TheoremCase, VerificationResult, verify

DEFAULT_FAMILY = ("x^(a*s)", "2", "1 + x^(a*s)", "x^a", "(x-0.5)^(a*s)")
DERIVATIVE_FAMILY = ("x^(2*a)", "x^(a+a*s)", "1 + x^(2*a)", "x^2")
CLASSICAL_DERIVATIVE_FAMILY = ("x^2", "x^3", "x^(1+a*s)", "x^(1.25)")


@dataclass(frozen=True)
class SweepGrid:
    theorems: tuple[str, ...]
    alphas: tuple[float, ...]
    s_values: tuple[float, ...]
    intervals: tuple[tuple[float, float], ...]
    functions: tuple[str, ...] = ()
    q_values: tuple[float, ...] = (1.0,)
    tol: float = 1e-9
    waive_certification: bool = False
    inject_violation: bool = False
    cert_grid: CertGrid = field(default_factory=CertGrid)

    def __post_init__(self) -> None:
        for name in ("theorems", "alphas", "s_values", "intervals", "q_values"):
            if not getattr(self, name):
                raise ConfigurationError(f"sweep grid field {name!r} is empty")
        bad = set(self.theorems) - set(THEOREMS)
        if bad:
            raise ConfigurationError(f"unknown theorem ids {sorted(bad)}")


def family_for(theorem: str, alpha: float) -> tuple[str, ...]:
    if theorem in ("thm31",):
        return DEFAULT_FAMILY
    if alpha == 1.0:
        return CLASSICAL_DERIVATIVE_FAMILY
    return DERIVATIVE_FAMILY


def build_cases(grid: SweepGrid, backend: LfiBackend) -> list[TheoremCase]:
    """Cases in a fixed enumeration order; ids are ``<theorem>-<index>``."""
    cases: list[TheoremCase] = []
    for thm in grid.theorems:
        qs = (1.0,) if thm in ("thm31", "lemma31") else grid.q_values
        index = 0
        for alpha, s, q, (a, b) in itertools.product(grid.alphas, grid.s_values, qs, grid.intervals):
            if thm == "thm33" and q <= 1.0:
                continue
            for fn in grid.functions or family_for(thm, alpha):
                cases.append(TheoremCase(
                    thm, float(alpha), float(s), float(a), float(b), fn, float(q), backend,
                    grid.tol, f"{thm}-{index:05d}", grid.waive_certification,
                    grid.inject_violation, grid.cert_grid))
                index += 1
    if not cases:
        raise ConfigurationError("sweep grid produced no cases")
    return cases


@dataclass
class SweepSummary:
    n_cases: int
    counts: dict
    violations: int
    min_slack: dict
    worst_case: dict


def summarize(results: list[VerificationResult]) -> SweepSummary:
    counts: dict[str, int] = {}
    min_slack: dict[str, float | None] = {}
    worst: dict[str, str | None] = {}
    for r in sorted(results, key=lambda r: r.case_id):
        counts[r.status] = counts.get(r.status, 0) + 1
        slack = r.min_slack
        min_slack.setdefault(r.theorem, None)
        worst.setdefault(r.theorem, None)
        if slack is not None and r.status in ("pass", "violation"):
            if min_slack[r.theorem] is None or slack < min_slack[r.theorem]:
                min_slack[r.theorem], worst[r.theorem] = slack, r.case_id
    return SweepSummary(len(results), dict(sorted(counts.items())),
                        sum(1 for r in results if not r.passed), min_slack, worst)


def run_cases(cases: list[TheoremCase], workers: int = 1) -> list[VerificationResult]:
    if workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(verify, cases, chunksize=max(1, len(cases) // (4 * workers))))
    else:
        results = [verify(c) for c in cases]
    return sorted(results, key=lambda r: r.case_id)


def sweep(grid: SweepGrid, backend: LfiBackend | None = None,
          workers: int = 1) -> tuple[list[VerificationResult], SweepSummary]:
    """Evaluate every case of ``grid``; failures are recorded per row, never raised."""
    cases = build_cases(grid, backend or LfiBackend.operational())
    results = run_cases(cases, workers)
    return results, summarize(results)


@dataclass(frozen=True)
class SharpnessReport:
    theorem: str
    case_id: str | None
    slack: float | None
    result: VerificationResult | None


def sharpness_probe(theorem: str, grid: SweepGrid, backend: LfiBackend | None = None,
                    side: str = "min") -> SharpnessReport:
    """Case of ``grid`` with the smallest slack (``side`` picks left/right for the chain)."""
    if side not in ("min", "left", "right"):
        raise ConfigurationError(f"side must be min, left or right, got {side!r}")
    results, _ = sweep(replace(grid, theorems=(theorem,)), backend)
    best: VerificationResult | None = None
    best_slack = None
    for r in results:
        if r.status not in ("pass", "violation"):
            continue
        slack = {"min": r.min_slack, "left": r.slack_left, "right": r.slack_right}[side]
        if slack is not None and (best_slack is None or slack < best_slack):
            best, best_slack = r, slack
    return SharpnessReport(theorem, best.case_id if best else None, best_slack, best)
