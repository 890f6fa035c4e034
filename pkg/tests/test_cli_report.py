from __future__ import annotations

import json

import pytest

from fractal_hh.cli_report import HEADER, csv_text, emit_csv, read_csv, summary_dict
from fractal_hh.cli_report.config import load_config, parse_config, theorem_id
from fractal_hh.cli_report.main import main, run, run_config_dict
from fractal_hh.errors import ConfigurationError
from fractal_hh.hh_harness import TheoremCase, verify

EXPECTED_HEADER = ("case_id,theorem,alpha,s,q,a,b,fn_text,backend,lhs,mid,rhs,"
                   "slack_left,slack_right,residual,pass,note")

MINIMAL = {"alpha_grid": [1.0], "s_grid": [1.0], "intervals": [[0, 1]], "functions": ["x^2"]}


def _write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_header_only_for_empty_report():
    assert csv_text([]).splitlines() == [EXPECTED_HEADER]
    assert ",".join(HEADER) == EXPECTED_HEADER


def test_rows_are_sorted_and_round_trip(tmp_path):
    results = [verify(TheoremCase("thm31", 1.0, 1.0, 0.0, 1.0, fn, case_id=cid))
               for cid, fn in (("thm31-00002", "x^2"), ("thm31-00000", "x"), ("thm31-00001", "3"))]
    text = csv_text(results)
    assert [line.split(",")[0] for line in text.splitlines()[1:]] == \
        ["thm31-00000", "thm31-00001", "thm31-00002"]
    emit_csv(results, tmp_path / "r.csv")
    back = read_csv(tmp_path / "r.csv")
    assert [r.case_id for r in back] == ["thm31-00000", "thm31-00001", "thm31-00002"]
    assert back[2].rhs == results[0].rhs and back[2].pass_ is True


def test_missing_values_are_empty_cells():
    r = verify(TheoremCase("thm31", 0.5, 0.5, 0.0, 1.0, "-1", case_id="thm31-00000"))
    row = csv_text([r]).splitlines()[1].split(",")
    assert row[HEADER.index("lhs")] == "" and row[HEADER.index("pass")] == "false"


def test_summary_counts_flagged_rows(tmp_path):
    results = [verify(TheoremCase("thm31", 1.0, 1.0, 0.0, 1.0, "x^2", case_id="thm31-00000")),
               verify(TheoremCase("thm31", 1.0, 1.0, 0.0, 1.0, "x", case_id="thm31-00001",
                                  inject_violation=True))]
    summary = summary_dict(results)
    assert summary["n_cases"] == 2 and summary["violations"] == 1
    assert summary["worst_case"]["thm31"] == "thm31-00001"


def test_theorem_aliases():
    assert theorem_id("31") == "thm31" and theorem_id("l31") == "lemma31"
    with pytest.raises(ConfigurationError):
        theorem_id("thm99")


@pytest.mark.parametrize("patch", [
    {"alpha_grid": []}, {"alpha_grid": [0.0]}, {"alpha_grid": [1.5]}, {"s_grid": ["a"]},
    {"intervals": [[1, 0]]}, {"functions": []}, {"q_grid": [0.5]}, {"bogus": 1},
    {"backend": {"variant": "op", "side": "left"}}, {"tolerance": -1}, {"workers": -2},
    {"inject_violation": "yes"},
])
def test_invalid_configs(patch):
    with pytest.raises(ConfigurationError):
        parse_config({**MINIMAL, **patch})


def test_missing_functions_field():
    raw = dict(MINIMAL)
    del raw["functions"]
    with pytest.raises(ConfigurationError, match="functions"):
        parse_config(raw)


def test_malformed_json_reports_line(tmp_path):
    p = _write(tmp_path, '{\n  "alpha_grid": [1.0],\n  "s_grid": [1.0,]\n}')
    with pytest.raises(ConfigurationError, match="line 3"):
        load_config(p)
    assert run(p, tmp_path / "out") == 1


def test_run_exit_codes(tmp_path):
    assert run(_write(tmp_path, MINIMAL), tmp_path / "ok") == 0
    assert (tmp_path / "ok" / "report.csv").read_text().startswith(EXPECTED_HEADER)
    summary = json.loads((tmp_path / "ok" / "summary.json").read_text())
    assert summary["violations"] == 0 and summary["n_cases"] == 1
    assert (tmp_path / "ok" / "plot_thm31.dat").exists()
    bad = _write(tmp_path, {**MINIMAL, "functions": ["x"], "inject_violation": True}, "bad.json")
    assert run(bad, tmp_path / "bad") == 2
    raw = dict(MINIMAL)
    del raw["functions"]
    assert run(_write(tmp_path, raw, "nofn.json"), tmp_path / "nofn") == 1


def test_reports_are_byte_identical(tmp_path):
    cfg = {"alpha_grid": [0.5, 1.0], "s_grid": [0.5], "intervals": [[0, 1], [1, 2]],
           "functions": "default", "theorems": ["thm31", "thm33"], "q_grid": [2.0]}
    run_config_dict(cfg, tmp_path / "a")
    run_config_dict({**cfg, "workers": 2}, tmp_path / "b")
    for name in ("report.csv", "plot_thm31.dat", "plot_thm33.dat"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    sa, sb = (json.loads((tmp_path / d / "summary.json").read_text()) for d in "ab")
    # the echoed configuration differs only in the worker count
    sa.pop("config"), sb.pop("config")
    assert sa == sb
    run_config_dict(cfg, tmp_path / "c")
    assert (tmp_path / "a" / "summary.json").read_bytes() == \
        (tmp_path / "c" / "summary.json").read_bytes()


def test_flagged_rows_match_summary(tmp_path):
    cfg = {"alpha_grid": [0.5], "s_grid": [1.0], "intervals": [[0, 1]], "functions": "default",
           "theorems": ["thm32"]}
    run_config_dict(cfg, tmp_path)
    rows = read_csv(tmp_path / "report.csv")
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert sum(not r.pass_ for r in rows) == summary["violations"]


def test_cli_verify(capsys):
    code = main(["verify", "--thm", "33", "--alpha", "1", "--q", "2", "--f", "x^2", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out["rhs"] == pytest.approx(0.330279804909785, rel=1e-12)
    code = main(["verify", "--thm", "31", "--alpha", "1", "--f", "x", "--inject"])
    assert code == 2


def test_cli_certify(capsys):
    assert main(["certify", "--f", "x^2", "--alpha", "1", "--s", "1"]) == 0
    assert "certified      true" in capsys.readouterr().out
    assert main(["certify", "--f", "1 - x^2", "--alpha", "1", "--s", "1"]) == 2


def test_cli_moments(capsys):
    assert main(["moments", "--alpha-grid", "1", "--kappa-grid", "0.5", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["alpha", "kappa", "moment", "abs_moment", "abs_bound", "K"]
    last = lines[-1].split()
    assert float(last[2]) == pytest.approx(0.5) and float(last[5]) == pytest.approx(0.25)


def test_cli_sweep_and_errors(tmp_path, capsys):
    p = _write(tmp_path, MINIMAL)
    assert main(["sweep", "--config", str(p), "--out", str(tmp_path / "o")]) == 0
    assert main(["sweep", "--config", str(tmp_path / "missing.json")]) == 1
    assert main(["verify", "--thm", "33", "--alpha", "1", "--q", "1", "--f", "x^2"]) == 1
    assert main(["verify", "--thm", "31", "--alpha", "1", "--f", "x^^2"]) == 1
