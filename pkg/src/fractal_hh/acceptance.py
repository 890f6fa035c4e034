"""Acceptance criteria as executable checks, shared by the test suite and ``selftest``."""

from __future__ import annotations

import itertools
import json
import math
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import special_fn
from .fractal_num import FractalNumber, f_add, f_mul, one, zero
from .func_expr import CertGrid, FractalPoly, SymbolicExponent, Term, certify_gks1, certify_gks2
from .func_expr.handle import make_function
from .func_expr.poly import ALPHA
from .hh_harness import SweepGrid, TheoremCase, kconst, sweep, verify
from .lf_calculus import LfiBackend, check_hoelder, lfi, moment


@dataclass(frozen=True)
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title}: {self.detail}"


def gamma_reference() -> list[tuple[float, float]]:
    text = resources.files("fractal_hh").joinpath("data/gamma_reference.txt").read_text()
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            x, g = line.split()
            rows.append((float(x), float(g)))
    return rows


def criterion_gamma() -> Outcome:
    t0 = time.perf_counter()
    ref = dict(gamma_reference())
    worst = max(abs(special_fn.gamma(x) - ref[x]) / ref[x] for x in (0.5, 1, 1.5, 2, 5, 6, 10.3))
    grid = np.round(np.arange(1, 201) * 0.1, 10)
    rec = max(abs(special_fn.gamma(x + 1) - x * special_fn.gamma(x)) / special_fn.gamma(x + 1)
              for x in grid)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and rec <= 1e-12 and dt < 1.0
    return Outcome(1, "Gamma core", ok,
                   f"fixture rel err {worst:.2e}, recurrence {rec:.2e}, {dt:.3f}s")


def criterion_fractal_algebra(n: int = 10_000, seed: int = 1) -> Outcome:
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = 0
    for alpha in (0.3, 0.5, 0.7, 1.0):
        trip = rng.uniform(-10, 10, size=(n, 3))
        for u, v, w in trip:
            x, y, z = (FractalNumber(float(c), alpha) for c in (u, v, w))
            scale = abs(u) + abs(v) + abs(w)
            checks = [
                (f_add(x, y).base, f_add(y, x).base, 0.0),
                (f_mul(x, y).base, f_mul(y, x).base, 0.0),
                (f_add(f_add(x, y), z).base, f_add(x, f_add(y, z)).base, 4e-16 * scale),
                (f_mul(f_mul(x, y), z).base, f_mul(x, f_mul(y, z)).base,
                 4e-16 * abs(u * v * w)),
                (f_mul(x, f_add(y, z)).base, f_add(f_mul(x, y), f_mul(x, z)).base,
                 4e-16 * abs(u) * (abs(v) + abs(w))),
                (f_add(x, zero(alpha)).base, x.base, 0.0),
                (f_mul(x, one(alpha)).base, x.base, 0.0),
            ]
            for lhs, rhs, tol in checks:
                err = abs(lhs - rhs)
                worst = max(worst, err / max(scale, 1e-300))
                if err > tol:
                    failures += 1
    return Outcome(2, "Fractal algebra identities", failures == 0,
                   f"{failures} failures over {4 * n} triples, worst scaled gap {worst:.2e}")


def criterion_moment_law() -> Outcome:
    t0 = time.perf_counter()
    quad = LfiBackend.quadrature()
    worst = 0.0
    for alpha in (0.3, 0.5, 0.7, 0.9, 1.0):
        for kappa in (0.0, 0.25, 0.5, 1.0, 1.5, 2.0):
            f = FractalPoly.monomial(SymbolicExponent(Fraction(kappa)), alpha)
            m = moment(kappa, alpha)
            worst = max(worst, abs(lfi(f, 0.0, 1.0, alpha, quad) - m) / m)
    dt = time.perf_counter() - t0
    return Outcome(3, "Moment law vs quadrature", worst <= 1e-8 and dt < 5.0,
                   f"max rel diff {worst:.2e}, {dt:.2f}s")


def criterion_classical_chain() -> Outcome:
    worst, eq_slack, bad = math.inf, 0.0, []
    for s in (0.25, 0.5, 0.75, 1.0):
        fns = ["x^s", "2", "2 + x^s"] + (["x^2"] if s == 1.0 else [])
        for (a, b), fn in itertools.product(((0.0, 1.0), (1.0, 3.0)), fns):
            r = verify(TheoremCase("thm31", 1.0, s, a, b, fn))
            if r.status != "pass":
                bad.append(f"{fn}@s={s},[{a},{b}]:{r.status}")
                continue
            worst = min(worst, r.slack_left, r.slack_right)
            if fn == "x^s" and a == 0.0:
                eq_slack = max(eq_slack, abs(r.slack_right))
    ok = not bad and worst >= -1e-9 and eq_slack <= 1e-9
    return Outcome(4, "Classical chain at alpha = 1", ok,
                   f"min slack {worst:.2e}, equality-case right slack {eq_slack:.2e}"
                   + (f", failing: {bad}" if bad else ""))


LEMMA_FRACTAL_FAMILY = ("x^a", "x^(2*a)", "1 + x^a", "3")


def criterion_trapezoid_identity() -> Outcome:
    classical = max(
        verify(TheoremCase("lemma31", 1.0, 1.0, a, b, fn)).residual
        for fn in ("x^2", "x^3", "2*x^2 - x") for a, b in ((0.0, 1.0), (1.0, 2.0)))
    fractal = {fn: verify(TheoremCase("lemma31", 0.5, 1.0, 0.0, 1.0, fn)).residual
               for fn in LEMMA_FRACTAL_FAMILY}
    worst_fractal = max(fractal.values())
    ok = classical <= 1e-9 and worst_fractal <= 1e-10
    detail = (f"alpha=1 max residual {classical:.2e}; alpha=0.5 residuals "
              + ", ".join(f"{k}: {v:.3g}" for k, v in fractal.items()))
    return Outcome(5, "Trapezoid identity", ok, detail)


def exact_k_half() -> float:
    """``int_0^1 t^(1/2) |1 - 2t| dt`` from the antiderivative ``2/3 t^(3/2) - 4/5 t^(5/2)``."""
    def F(t):
        return 2.0 / 3.0 * t ** 1.5 - 4.0 / 5.0 * t ** 2.5
    return 2.0 * F(0.5) - F(0.0) - F(1.0)


def criterion_bound_constant() -> Outcome:
    k11 = kconst(1.0, 1.0)
    k_half = kconst(1.0, 0.5)
    oracle = exact_k_half()
    r = verify(TheoremCase("thm32", 1.0, 1.0, 0.0, 1.0, "x^2", q=1.0))
    ok = (abs(k11 - 0.25) <= 1e-12 and abs(k_half - oracle) <= 1e-10
          and abs(r.lhs - 1 / 6) <= 1e-12 and abs(r.rhs - 0.25) <= 1e-12 and r.lhs <= r.rhs)
    return Outcome(6, "q >= 1 bound constant", ok,
                   f"K(1,1)={k11!r}, K(1,0.5)-exact={k_half - oracle:.2e}, "
                   f"defect={r.lhs!r}, bound={r.rhs!r}")


def criterion_holder_bound() -> Outcome:
    worst, certified, bad = math.inf, 0, []
    for s, q, (a, b) in itertools.product((0.5, 1.0), (1.5, 2.0, 4.0), ((0.0, 1.0), (1.0, 3.0))):
        for fn in ("x^2", "x^3", "x^(1+a*s)", "x^(1.25)"):
            r = verify(TheoremCase("thm33", 1.0, s, a, b, fn, q=q))
            if r.status == "rejected":
                continue
            if r.status == "error":
                bad.append(r.note)
                continue
            certified += 1
            worst = min(worst, r.slack_right)
    example = verify(TheoremCase("thm33", 1.0, 1.0, 0.0, 1.0, "x^2", q=2.0)).rhs
    ok = not bad and certified > 0 and worst >= -1e-9 and abs(example - 0.33034) <= 1e-4
    return Outcome(7, "q > 1 bound", ok,
                   f"{certified} certified cases, min slack {worst:.3g}, worked bound {example!r}")


def random_poly(rng: np.random.Generator, alpha: float) -> FractalPoly:
    exps = [SymbolicExponent(), ALPHA, ALPHA + ALPHA, SymbolicExponent(Fraction(1)),
            SymbolicExponent(Fraction(3, 2))]
    terms = []
    for _ in range(int(rng.integers(1, 4))):
        shift = float(rng.choice([0.0, 0.3, 0.6]))
        exp = exps[int(rng.integers(len(exps)))]
        terms.append(Term(float(rng.uniform(-2, 2)), shift, exp,
                          shift > 0 and not exp.is_natural))
    return FractalPoly.build(terms, alpha)


def criterion_hoelder(n_pairs: int = 100, seed: int = 7) -> Outcome:
    rng = np.random.default_rng(seed)
    quad = LfiBackend.quadrature()
    worst, count = math.inf, 0
    for alpha in (0.5, 1.0):
        for _ in range(n_pairs):
            f, g = random_poly(rng, alpha), random_poly(rng, alpha)
            for p in (1.5, 2.0, 3.0):
                worst = min(worst, check_hoelder(f, g, 0.0, 1.0, alpha, p, p / (p - 1.0), quad))
                count += 1
    return Outcome(8, "Generalized Hoelder", worst >= -1e-10,
                   f"{count} checks, min slack {worst:.3g}")


def criterion_sweep() -> Outcome:
    from .cli_report.main import run_config_dict
    from .cli_report.report import read_csv

    fractional = {
        "theorems": ["thm31", "lemma31", "thm32", "thm33"],
        "alpha_grid": [0.3, 0.5, 0.7, 0.9], "s_grid": [0.25, 0.5, 0.75],
        "q_grid": [1, 2], "intervals": [[0, 1], [1, 2]], "functions": "default",
        "backend": "op",
    }
    classical = {"theorems": ["thm31"], "alpha_grid": [1], "s_grid": [1],
                 "intervals": [[0, 1]], "functions": ["x^2", "x^(a*s)"]}
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        t0 = time.perf_counter()
        code1 = run_config_dict(fractional, tmp / "one")
        dt = time.perf_counter() - t0
        run_config_dict(fractional, tmp / "two")
        same = ((tmp / "one" / "report.csv").read_bytes() == (tmp / "two" / "report.csv").read_bytes()
                and (tmp / "one" / "summary.json").read_bytes()
                == (tmp / "two" / "summary.json").read_bytes())
        summary = json.loads((tmp / "one" / "summary.json").read_text())
        flagged = sum(1 for r in read_csv(tmp / "one" / "report.csv") if not r.pass_)
        clean = run_config_dict(classical, tmp / "clean")
        injected = run_config_dict(dict(classical, inject_violation=True), tmp / "inj")
    consistent = flagged == summary["violations"] and code1 == (2 if flagged else 0)
    ok = dt < 30.0 and same and consistent and clean == 0 and injected == 2
    return Outcome(9, "Fractional sweep and reporting", ok,
                   f"{summary['n_cases']} cases in {dt:.1f}s, {summary['violations']} finding rows, "
                   f"deterministic={same}, clean exit {clean}, injected exit {injected}")


def criterion_certifiers() -> Outcome:
    worst = 0.0
    for alpha, s in itertools.product((0.3, 0.5, 1.0), (0.25, 0.5, 1.0)):
        f = make_function("x^(a*s)", alpha, s)
        for cert in (certify_gks2, certify_gks1):
            rep = cert(f, alpha, s)
            if not rep.certified:
                worst = math.inf
            worst = max(worst, rep.max_violation)
    neg = make_function("-1", 0.5, 0.5)
    refuted = [cert(neg, 0.5, 0.5, grid=CertGrid(), require_nonneg=False)
               for cert in (certify_gks2, certify_gks1)]
    ok = worst <= 1e-10 and all(not r.certified and r.max_violation > 0 for r in refuted)
    return Outcome(10, "Convexity certifiers", ok,
                   f"x^(a s) max violation {worst:.2e}; f=-1 violations "
                   + ", ".join(f"{r.max_violation:.3g}" for r in refuted))


CRITERIA = (criterion_gamma, criterion_fractal_algebra, criterion_moment_law,
            criterion_classical_chain, criterion_trapezoid_identity, criterion_bound_constant,
            criterion_holder_bound, criterion_hoelder, criterion_sweep, criterion_certifiers)


def run_all() -> list[Outcome]:
    return [c() for c in CRITERIA]
