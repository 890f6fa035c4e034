"""JSON run configuration."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..errors import BackendCapabilityError, ConfigurationError
from ..func_expr import CertGrid
from ..hh_harness import THEOREMS, SweepGrid
from ..lf_calculus import LfiBackend

_THEOREM_ALIASES = {"31": "thm31", "l31": "lemma31", "32": "thm32", "33": "thm33"}
_KNOWN = {
    "theorems", "alpha_grid", "s_grid", "q_grid", "intervals", "functions", "backend",
    "tolerance", "cert_tolerance", "output_dir", "seed", "inject_violation",
    "symmetrize_kernel", "nonneg_waiver", "workers",
}


def theorem_id(name: str) -> str:
    name = _THEOREM_ALIASES.get(str(name), str(name))
    if name not in THEOREMS:
        raise ConfigurationError(f"unknown theorem {name!r}")
    return name


@dataclass(frozen=True)
class RunConfig:
    alpha_grid: tuple[float, ...]
    s_grid: tuple[float, ...]
    intervals: tuple[tuple[float, float], ...]
    functions: tuple[str, ...]
    theorems: tuple[str, ...] = ("thm31",)
    q_grid: tuple[float, ...] = (1.0,)
    backend: dict = field(default_factory=lambda: {"variant": "op"})
    tolerance: float = 1e-9
    cert_tolerance: float = 1e-10
    output_dir: str = "."
    seed: int = 0
    inject_violation: bool = False
    symmetrize_kernel: bool = False
    nonneg_waiver: bool = False
    workers: int = 1
    raw: dict = field(default_factory=dict, compare=False)

    def make_backend(self) -> LfiBackend:
        spec = dict(self.backend)
        variant = spec.pop("variant", "op")
        if self.symmetrize_kernel:
            spec["side"] = "symmetric"
        try:
            return LfiBackend.from_name(variant, **spec)
        except TypeError as exc:
            raise ConfigurationError(f"field 'backend': {exc}") from exc
        except BackendCapabilityError as exc:
            raise ConfigurationError(f"field 'backend': {exc}") from exc

    def sweep_grid(self) -> SweepGrid:
        return SweepGrid(
            self.theorems, self.alpha_grid, self.s_grid, self.intervals,
            () if self.functions == ("default",) else self.functions, self.q_grid,
            self.tolerance, self.nonneg_waiver, self.inject_violation,
            CertGrid(seed=self.seed, tol=self.cert_tolerance))


def _reals(raw: dict, key: str, lo: float, hi: float, lo_open: bool, required: bool = True,
           default=None) -> tuple[float, ...]:
    if key not in raw:
        if required:
            raise ConfigurationError(f"missing required field {key!r}")
        return default
    vals = raw[key]
    if not isinstance(vals, list) or not vals:
        raise ConfigurationError(f"field {key!r} must be a non-empty list of numbers")
    out = []
    for v in vals:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigurationError(f"field {key!r}: {v!r} is not a number")
        if (v <= lo if lo_open else v < lo) or v > hi:
            raise ConfigurationError(f"field {key!r}: {v!r} out of range")
        out.append(float(v))
    return tuple(out)


def parse_config(raw: Any) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigurationError("configuration must be a JSON object")
    unknown = set(raw) - _KNOWN
    if unknown:
        raise ConfigurationError(f"unknown fields {sorted(unknown)}")
    alphas = _reals(raw, "alpha_grid", 0.0, 1.0, True)
    s_vals = _reals(raw, "s_grid", 0.0, 1.0, True)
    q_vals = _reals(raw, "q_grid", 1.0, float("inf"), False, False, (1.0,))
    if "intervals" not in raw:
        raise ConfigurationError("missing required field 'intervals'")
    intervals = raw["intervals"]
    if not isinstance(intervals, list) or not intervals:
        raise ConfigurationError("field 'intervals' must be a non-empty list of [a, b] pairs")
    ivs = []
    for iv in intervals:
        if (not isinstance(iv, list) or len(iv) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in iv)
                or not 0 <= iv[0] < iv[1]):
            raise ConfigurationError(f"field 'intervals': {iv!r} is not a pair with 0 <= a < b")
        ivs.append((float(iv[0]), float(iv[1])))
    if "functions" not in raw:
        raise ConfigurationError("missing required field 'functions'")
    fns = raw["functions"]
    if fns == "default":
        fns = ["default"]
    if not isinstance(fns, list) or not fns or not all(isinstance(f, str) for f in fns):
        raise ConfigurationError("field 'functions' must be a non-empty list of expressions or \"default\"")
    theorems = raw.get("theorems", ["thm31"])
    if not isinstance(theorems, list) or not theorems:
        raise ConfigurationError("field 'theorems' must be a non-empty list")
    backend = raw.get("backend", {"variant": "op"})
    if isinstance(backend, str):
        backend = {"variant": backend}
    if not isinstance(backend, dict):
        raise ConfigurationError("field 'backend' must be a name or an object")
    tol = raw.get("tolerance", 1e-9)
    cert_tol = raw.get("cert_tolerance", 1e-10)
    for key, v in (("tolerance", tol), ("cert_tolerance", cert_tol)):
        if not isinstance(v, (int, float)) or isinstance(v, bool) or v <= 0:
            raise ConfigurationError(f"field {key!r} must be a positive number")
    flags = {}
    for key in ("inject_violation", "symmetrize_kernel", "nonneg_waiver"):
        v = raw.get(key, False)
        if not isinstance(v, bool):
            raise ConfigurationError(f"field {key!r} must be true or false")
        flags[key] = v
    seed, workers = raw.get("seed", 0), raw.get("workers", 1)
    for key, v in (("seed", seed), ("workers", workers)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ConfigurationError(f"field {key!r} must be a non-negative integer")
    cfg = RunConfig(
        alphas, s_vals, tuple(ivs), tuple(fns), tuple(theorem_id(t) for t in theorems),
        q_vals, backend, float(tol), float(cert_tol), str(raw.get("output_dir", ".")),
        seed, flags["inject_violation"], flags["symmetrize_kernel"], flags["nonneg_waiver"],
        max(1, workers), raw)
    cfg.make_backend()
    return cfg


def load_config(path: str | Path) -> RunConfig:
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_config(raw)
