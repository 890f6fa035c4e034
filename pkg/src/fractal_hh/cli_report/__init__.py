"""Batch front end: configuration, sweep orchestration and report files."""

from .config import RunConfig, load_config, parse_config
from .main import build_parser, execute, main, run, run_config_dict
from .report import (HEADER, ReportRow, csv_text, emit_csv, emit_json_summary, emit_plot_columns,
                     read_csv, summary_dict)

__all__ = [
    "HEADER", "ReportRow", "RunConfig", "build_parser", "csv_text", "emit_csv",
    "emit_json_summary", "emit_plot_columns", "execute", "load_config", "main", "parse_config",
    "read_csv", "run", "run_config_dict", "summary_dict",
]
