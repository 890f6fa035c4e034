from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fractal_hh.acceptance import gamma_reference
from fractal_hh.errors import DomainError
from fractal_hh.special_fn import beta, gamma, gamma_ratio, log_gamma

REFERENCE = gamma_reference()


@pytest.mark.parametrize("x, expected", REFERENCE)
def test_gamma_matches_reference_table(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-13)


def test_reference_table_covers_required_points():
    xs = {x for x, _ in REFERENCE}
    assert {0.5, 1.0, 1.5, 2.0, 5.0, 6.0, 10.3} <= xs
    assert min(xs) <= 0.1 and max(xs) >= 50


@pytest.mark.parametrize("x, expected", [(1, 1.0), (6, 120.0), (0.5, 1.772453850905516)])
def test_gamma_examples(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("x, expected", [(1, 0.0), (2, 0.0), (11, 15.104412573075516)])
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-15, abs=1e-15)


def test_gamma_ratio_examples():
    assert gamma_ratio(1.5, 2.5) == pytest.approx(1 / 1.5, rel=1e-15)
    assert gamma_ratio(2, 3) == pytest.approx(0.5, rel=1e-15)
    # 40-digit oracle value
    assert gamma_ratio(1.25, 1.75) == pytest.approx(0.986225039729546297, rel=1e-14)


def test_gamma_ratio_large_arguments_use_logs():
    # Gamma(200.5) overflows a double but the ratio does not
    assert gamma_ratio(200.5, 200.0) == pytest.approx(math.sqrt(200.0) * (1 - 1 / 1600), rel=1e-6)


def test_beta_examples():
    assert beta(1, 1) == pytest.approx(1.0)
    assert beta(2, 1) == pytest.approx(0.5)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)


@pytest.mark.parametrize("fn", [gamma, log_gamma])
@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, math.inf, math.nan])
def test_domain_errors(fn, bad):
    with pytest.raises(DomainError):
        fn(bad)


def test_ratio_and_beta_domain_errors():
    with pytest.raises(DomainError):
        gamma_ratio(1.0, 0.0)
    with pytest.raises(DomainError):
        beta(-1.0, 1.0)


GRID = np.round(np.arange(1, 201) * 0.1, 10)


@pytest.mark.parametrize("x", GRID)
def test_recurrence(x):
    assert abs(gamma(x + 1) - x * gamma(x)) / gamma(x + 1) <= 1e-12


@pytest.mark.parametrize("x", GRID[::7])
def test_ratio_consistency(x):
    q = x + 0.37
    assert gamma_ratio(x, q) * gamma(q) == pytest.approx(gamma(x), rel=1e-11)


@pytest.mark.parametrize("x", GRID[::9])
def test_log_gamma_consistent_with_gamma(x):
    assert math.exp(log_gamma(x)) == pytest.approx(gamma(x), rel=1e-12)


@given(st.floats(0.05, 60), st.floats(0.05, 60))
def test_beta_symmetry(p, q):
    assert beta(p, q) == pytest.approx(beta(q, p), rel=1e-15)
