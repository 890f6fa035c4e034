"""CSV, JSON and plot-column emission for verification results."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .. import __version__
from ..hh_harness import VerificationResult, summarize


@dataclass(frozen=True)
class ReportRow:
    case_id: str
    theorem: str
    alpha: float
    s: float
    q: float
    a: float
    b: float
    fn_text: str
    backend: str
    lhs: float | None
    mid: float | None
    rhs: float | None
    slack_left: float | None
    slack_right: float | None
    residual: float | None
    pass_: bool
    note: str

    @classmethod
    def from_result(cls, r: VerificationResult) -> ReportRow:
        note = r.note if r.status in ("pass", "violation") or not r.note else f"{r.status}: {r.note}"
        if r.status == "violation" and not note:
            note = "violation"
        return cls(r.case_id, r.theorem, r.alpha, r.s, r.q, r.a, r.b, r.fn_text, r.backend,
                   r.lhs, r.mid, r.rhs, r.slack_left, r.slack_right, r.residual, r.passed, note)


HEADER = [f.name.rstrip("_") for f in fields(ReportRow)]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _rows(rows) -> list[ReportRow]:
    out = [r if isinstance(r, ReportRow) else ReportRow.from_result(r) for r in rows]
    return sorted(out, key=lambda r: r.case_id)


def csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for row in _rows(rows):
        writer.writerow([_cell(v) for v in astuple(row)])
    return buf.getvalue()


def emit_csv(rows, path: str | Path) -> None:
    Path(path).write_text(csv_text(rows), encoding="utf-8")


def read_csv(path: str | Path) -> list[ReportRow]:
    """Parse a report back into rows (empty cells become ``None``)."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            num = {k: (float(rec[k]) if rec[k] != "" else None)
                   for k in ("lhs", "mid", "rhs", "slack_left", "slack_right", "residual")}
            out.append(ReportRow(
                rec["case_id"], rec["theorem"], float(rec["alpha"]), float(rec["s"]),
                float(rec["q"]), float(rec["a"]), float(rec["b"]), rec["fn_text"], rec["backend"],
                pass_=rec["pass"] == "true", note=rec["note"], **num))
    return out


def _finite(v):
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def summary_dict(results: list[VerificationResult], config: dict | None = None) -> dict:
    summ = summarize(results)
    return {
        "tool": "fractal_hh",
        "version": __version__,
        "n_cases": summ.n_cases,
        "counts": summ.counts,
        "violations": summ.violations,
        "min_slack": {k: _finite(v) for k, v in summ.min_slack.items()},
        "worst_case": summ.worst_case,
        "config": config or {},
    }


def emit_json_summary(results: list[VerificationResult], path: str | Path,
                      config: dict | None = None) -> None:
    text = json.dumps(summary_dict(results, config), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def emit_plot_columns(results: list[VerificationResult], directory: str | Path) -> list[Path]:
    """One ``plot_<theorem>.dat`` per theorem with columns ``alpha s slack``."""
    directory = Path(directory)
    by_thm: dict[str, list[str]] = {}
    for r in sorted(results, key=lambda r: r.case_id):
        slack = r.min_slack
        lines = by_thm.setdefault(r.theorem, [])
        if slack is not None:
            lines.append(f"{r.alpha!r} {r.s!r} {slack!r}")
    paths = []
    for thm, lines in sorted(by_thm.items()):
        p = directory / f"plot_{thm}.dat"
        p.write_text("# alpha s slack\n" + "".join(line + "\n" for line in lines), encoding="utf-8")
        paths.append(p)
    return paths
