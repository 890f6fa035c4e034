"""Command-line front end: ``verify``, ``sweep``, ``certify``, ``moments``, ``selftest``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..errors import ConfigurationError, FractalHHError
from ..func_expr import CertGrid, certify_gks1, certify_gks2
from ..func_expr.handle import make_function
from ..hh_harness import TheoremCase, kconst, run_cases, build_cases, verify
from ..lf_calculus import LfiBackend, abs_moment_detail, moment
from .config import RunConfig, load_config, parse_config, theorem_id
from .report import ReportRow, emit_csv, emit_json_summary, emit_plot_columns

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


def execute(cfg: RunConfig, out_dir: str | Path) -> int:
    """Run a parsed configuration and write ``report.csv``, ``summary.json`` and plot files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cases = build_cases(cfg.sweep_grid(), cfg.make_backend())
    results = run_cases(cases, cfg.workers)
    emit_csv(results, out / "report.csv")
    emit_json_summary(results, out / "summary.json", cfg.raw)
    emit_plot_columns(results, out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


def run_config_dict(raw: dict, out_dir: str | Path) -> int:
    return execute(parse_config(raw), out_dir)


def run(config_path: str | Path, out_dir: str | Path | None = None) -> int:
    """Exit code for a sweep: 0 all pass, 2 violations or rejections, 1 configuration error."""
    try:
        cfg = load_config(config_path)
        return execute(cfg, out_dir if out_dir is not None else cfg.output_dir)
    except (ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _fmt(v) -> str:
    return "" if v is None else repr(v)


def _cmd_verify(args) -> int:
    backend = LfiBackend.from_name(args.backend, side="symmetric" if args.symmetrize else "right")
    case = TheoremCase(theorem_id(args.thm), args.alpha, args.s, args.a, args.b, args.f, args.q,
                       backend, args.tol, waive_certification=args.waive,
                       inject_violation=args.inject)
    r = verify(case)
    if args.json:
        row = ReportRow.from_result(r)
        payload = {k.rstrip("_"): v for k, v in row.__dict__.items()}
        payload["diagnostics"] = r.diagnostics
        print(json.dumps(payload, indent=2, sort_keys=True, default=repr))
    else:
        for key in ("lhs", "mid", "rhs", "slack_left", "slack_right", "residual"):
            val = getattr(r, key)
            if val is not None:
                print(f"{key:12s} {val!r}")
        print(f"{'status':12s} {r.status}" + (f" ({r.note})" if r.note else ""))
    if r.status == "error":
        return EXIT_ERROR
    return EXIT_OK if r.passed else EXIT_VIOLATION


def _cmd_sweep(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.workers:
            from dataclasses import replace
            cfg = replace(cfg, workers=args.workers)
        return execute(cfg, args.out or cfg.output_dir)
    except (ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _cmd_certify(args) -> int:
    f = make_function(args.f, args.alpha, args.s)
    cert = certify_gks2 if args.sense == 2 else certify_gks1
    rep = cert(f, args.alpha, args.s, (args.a, args.b), CertGrid(seed=args.seed, tol=args.tol),
               require_nonneg=not args.allow_negative)
    print(f"sense          {rep.sense}")
    print(f"certified      {str(rep.certified).lower()}")
    print(f"max_violation  {rep.max_violation!r}")
    print(f"worst (u,v,l1) {rep.worst}")
    print(f"samples        {rep.n_checked}")
    for note in rep.notes:
        print(f"note           {note}")
    return EXIT_OK if rep.certified else EXIT_VIOLATION


def _cmd_moments(args) -> int:
    backend = LfiBackend.from_name(args.backend)
    print("alpha kappa moment abs_moment abs_bound K")
    for alpha in args.alpha_grid:
        for kappa in args.kappa_grid:
            am = abs_moment_detail(kappa, alpha, backend)
            s = kappa / alpha
            k = kconst(alpha, s) if 0 < s <= 1 else None
            print(f"{alpha!r} {kappa!r} {moment(kappa, alpha)!r} {am.value!r} {am.bound!r} {_fmt(k)}")
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from ..acceptance import run_all

    outcomes = run_all()
    for o in outcomes:
        print(o.line())
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fractal-hh", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify one theorem case")
    v.add_argument("--thm", required=True, choices=["31", "l31", "32", "33"])
    v.add_argument("--alpha", type=float, required=True)
    v.add_argument("--s", type=float, default=1.0)
    v.add_argument("--q", type=float, default=1.0)
    v.add_argument("--a", type=float, default=0.0)
    v.add_argument("--b", type=float, default=1.0)
    v.add_argument("--f", required=True)
    v.add_argument("--backend", choices=["op", "quad"], default="op")
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--waive", action="store_true", help="skip the convexity certificate")
    v.add_argument("--inject", action="store_true", help="scale upper bounds by 0.9")
    v.add_argument("--symmetrize", action="store_true", help="average left and right kernels")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("sweep", help="run a JSON-configured sweep")
    s.add_argument("--config", required=True)
    s.add_argument("--out")
    s.add_argument("--workers", type=int, default=0)
    s.set_defaults(func=_cmd_sweep)

    c = sub.add_parser("certify", help="search for convexity violations")
    c.add_argument("--sense", type=int, choices=[1, 2], default=2)
    c.add_argument("--f", required=True)
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("--s", type=float, required=True)
    c.add_argument("--a", type=float, default=0.0)
    c.add_argument("--b", type=float, default=1.0)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=1e-10)
    c.add_argument("--allow-negative", action="store_true")
    c.set_defaults(func=_cmd_certify)

    m = sub.add_parser("moments", help="tabulate moment constants")
    m.add_argument("--alpha-grid", type=float, nargs="+", required=True)
    m.add_argument("--kappa-grid", type=float, nargs="+", required=True)
    m.add_argument("--backend", choices=["op", "quad"], default="op")
    m.set_defaults(func=_cmd_moments)

    t = sub.add_parser("selftest", help="run the acceptance checks")
    t.set_defaults(func=_cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FractalHHError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
