from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from fractal_hh.errors import BackendCapabilityError, ConfigurationError, DomainError
from fractal_hh.func_expr import FractalPoly, SymbolicExponent, make_function
from fractal_hh.lf_calculus import (Integrand, LfiBackend, abs_moment, abs_moment_detail,
                                    check_hoelder, check_newton_leibniz, check_parts,
                                    check_substitution, lemma23_discrepancy, lfd, lfd_numeric,
                                    lfd_poly, lfi, moment, rl_quad, sum_series, term_integral)

OP = LfiBackend.operational()
QUAD = LfiBackend.quadrature()
KAPPAS = (0.0, 0.25, 0.5, 1.0, 1.5, 2.0)
ALPHAS = (0.3, 0.5, 0.7, 0.9, 1.0)


def mono(kappa, alpha, coeff=1.0, shift=0.0):
    return FractalPoly.monomial(SymbolicExponent(Fraction(kappa)), alpha, coeff=coeff, shift=shift)


# backend configuration -----------------------------------------------------

@pytest.mark.parametrize("kw", [dict(nodes=4), dict(series_terms=8), dict(series_tol=0.0),
                                dict(grading=1.5), dict(side="middle")])
def test_backend_validation(kw):
    with pytest.raises(ConfigurationError):
        LfiBackend.quadrature(**kw)


def test_operational_backend_is_right_sided_only():
    with pytest.raises(BackendCapabilityError):
        LfiBackend.operational(side="symmetric")


# moment law ----------------------------------------------------------------

def test_moment_examples():
    assert moment(0, 1) == 1.0
    assert moment(1, 1) == 0.5
    assert moment(0.25, 0.5) == pytest.approx(0.986225039729546297, rel=1e-14)


def test_moment_domain():
    with pytest.raises(DomainError):
        moment(-1.0, 0.5)
    with pytest.raises(DomainError):
        moment(0.5, 0.0)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("kappa", KAPPAS)
def test_moment_law_against_quadrature(kappa, alpha):
    m = moment(kappa, alpha)
    assert lfi(mono(kappa, alpha), 0, 1, alpha, QUAD) == pytest.approx(m, rel=1e-8)
    assert lfi(mono(kappa, alpha), 0, 1, alpha, OP) == pytest.approx(m, rel=1e-14)


def test_lfi_examples():
    assert lfi(make_function("1", 1.0), 0, 1, 1.0) == pytest.approx(1.0)
    alpha, s = 0.6, 0.7
    assert lfi(make_function("x^(a*s)", alpha, s), 0, 1, alpha) == pytest.approx(
        math.gamma(1 + s * alpha) / math.gamma(1 + (s + 1) * alpha), rel=1e-14)
    assert lfi(make_function("1", 0.5), 0, 1, 0.5) == pytest.approx(1.128379167095513, rel=1e-14)


def test_lfi_errors():
    with pytest.raises(DomainError):
        lfi(make_function("x", 1.0), 1, 1, 1.0)
    with pytest.raises(BackendCapabilityError):
        lfi(make_function("abs(1-2*x)^a", 0.5), 0, 1, 0.5, OP)


def test_term_integral_matches_hypergeometric_series():
    # (b - mu)^k (b-a)^alpha sum_n C(k, n) (-z)^n / (Gamma(alpha) (alpha + n))
    kappa, mu, a, b, alpha = 0.75, 0.0, 0.4, 1.3, 0.45
    z = (b - a) / (b - mu)
    total, c = 0.0, 1.0
    for n in range(400):
        total += c * (-z) ** n / (alpha + n)
        c *= (kappa - n) / (n + 1)
    expected = (b - mu) ** kappa * (b - a) ** alpha * total / math.gamma(alpha)
    assert term_integral(kappa, mu, a, b, alpha) == pytest.approx(expected, rel=1e-12)


BACKEND_POLYS = ["x^(a*s) + 2*(x-0.3)^a", "(x-1.5)^(2*a) + x^2", "3*x^0.25 + (x-0.7)^1.5",
                 "x^(1+a)", "2 + x^(2*a)"]


@pytest.mark.parametrize("text", BACKEND_POLYS)
@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("interval", [(0.0, 1.0), (1.0, 3.0), (0.2, 2.0)])
def test_backend_agreement(text, alpha, interval):
    f = make_function(text, alpha, 0.5)
    vo, vq = lfi(f, *interval, alpha, OP), lfi(f, *interval, alpha, QUAD)
    assert abs(vo - vq) <= 1e-8 * (1 + abs(vo))


@pytest.mark.parametrize("text", ["x^2 + 1", "x^3 - 2*x", "x^(1.5) + (x-0.5)^(2.5)"])
@pytest.mark.parametrize("interval", [(0.0, 1.0), (0.5, 2.5)])
def test_alpha_one_reduces_to_ordinary_integral(text, interval):
    f = make_function(text, 1.0)
    oracle, _ = integrate.quad(f, *interval, points=[0.5], epsabs=1e-12, epsrel=1e-12)
    for backend in (OP, QUAD):
        assert lfi(f, *interval, 1.0, backend) == pytest.approx(oracle, rel=1e-9)


@given(c1=st.floats(-5, 5), c2=st.floats(-5, 5), alpha=st.sampled_from(ALPHAS))
def test_linearity(c1, c2, alpha):
    f, g = make_function("x^a + (x-0.4)^(2*a)", alpha), make_function("x^2 + 1", alpha)
    combo = f.poly.scale(c1) + g.poly.scale(c2)
    for backend in (OP, QUAD):
        lhs = lfi(combo, 0, 1, alpha, backend)
        rhs = c1 * lfi(f, 0, 1, alpha, backend) + c2 * lfi(g, 0, 1, alpha, backend)
        assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-11 * (abs(c1) + abs(c2)))


@given(alpha=st.floats(0.05, 1.0), mu=st.floats(0.0, 2.0), kappa=st.floats(0.0, 3.0),
       b=st.floats(0.1, 3.0))
def test_positivity(alpha, mu, kappa, b):
    f = mono(kappa, alpha, shift=mu)
    for backend in (OP, QUAD):
        assert lfi(f, 0, b, alpha, backend) >= 0.0


@given(alpha=st.floats(0.05, 1.0), c=st.floats(0.05, 0.95))
def test_monotone_domain_for_nonnegative_coefficients(alpha, c):
    f = make_function("x^a + 2*(x-0.3)^(2*a) + 1", alpha)
    assert lfi(f, 0, c, alpha, OP) <= lfi(f, 0, 1, alpha, OP) + 1e-15


def test_monotone_domain_can_fail_for_mixed_signs():
    # f >= 0 on [0, 1] but the kernel weight moves with the right end
    f = make_function("1.5 - x", 0.5)
    assert lfi(f, 0, 1.0, 0.5, OP) < lfi(f, 0, 0.9, 0.5, OP)


def test_translation_covariance():
    f = make_function("x^(a) + (x-0.25)^(2*a)", 0.6)
    shifted = f.poly.compose_affine(-0.7, 1.0)
    assert lfi(shifted, 0.7, 1.7, 0.6, OP) == pytest.approx(lfi(f, 0, 1, 0.6, OP), rel=1e-12)


def test_lemma23_discrepancy():
    assert lemma23_discrepancy(0.0, 2.0, 1.0, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert lemma23_discrepancy(1.0, 2.0, 2.0, 1.0) == pytest.approx(0.0, abs=1e-13)
    assert lemma23_discrepancy(1.0, 2.0, 1.0, 0.5) > 0.1


def test_left_and_symmetric_kernels():
    f = Integrand(lambda t: np.asarray(t) ** 2)
    right = rl_quad(f, 0, 1, 0.5, QUAD, side="right")
    left = rl_quad(f, 0, 1, 0.5, QUAD, side="left")
    assert right == pytest.approx(moment(2, 0.5), rel=1e-12)
    # kernel t^(alpha-1) at the left end: int t^(alpha+1) dt / Gamma(alpha)
    assert left == pytest.approx(1.0 / (math.gamma(0.5) * 2.5), rel=1e-12)
    assert rl_quad(f, 0, 1, 0.5, QUAD, side="symmetric") == pytest.approx(0.5 * (left + right))


# |1 - 2t|^alpha moments ----------------------------------------------------

def test_abs_moment_examples():
    assert abs_moment(1.0, 1.0) == pytest.approx(0.25, rel=1e-14)
    assert abs_moment(0.5, 1.0) == pytest.approx(0.321895141649746006, rel=1e-12)
    assert abs_moment(0.0, 1.0) == pytest.approx(0.5, rel=1e-14)
    for backend in (OP, QUAD):
        assert abs_moment(0.5, 1.0, backend) == pytest.approx(0.321895141649746006, rel=1e-12)


# 40-digit oracle values: operational = left-half series closed form + right-half 2F1;
# quadrature = direct kernel integral over [0, 1]
ABS_ORACLE = [
    (0.075, 0.3, 1.21764409718681226, 0.946026058082743533),
    (0.25, 0.5, 0.873164870469818492, 0.741054840344359362),
    (0.5, 0.5, 0.772608574481947701, 0.675978240067284729),
]


@pytest.mark.parametrize("kappa, alpha, op_value, quad_value", ABS_ORACLE)
def test_abs_moment_fractional(kappa, alpha, op_value, quad_value):
    res = abs_moment_detail(kappa, alpha, OP)
    assert res.converged and res.value == pytest.approx(op_value, rel=1e-12)
    assert abs_moment(kappa, alpha, QUAD) == pytest.approx(quad_value, rel=1e-12)


def test_abs_moment_reports_unconverged_series():
    res = abs_moment_detail(0.01, 0.05, LfiBackend.operational(series_terms=16, series_accept=1e-15))
    assert not res.converged and res.bound > 0


def test_sum_series_finite_and_geometric():
    res = sum_series(1.0, lambda n: 0.5 * np.ones_like(n), max_terms=64, tol=1e-14,
                     accept=1e-12, tail="monotone")
    assert res.value == pytest.approx(2.0, rel=1e-13) and res.converged
    res = sum_series(1.0, lambda n: (1.0 - n) / (n + 1.0), max_terms=64, tol=1e-14,
                     accept=1e-12, tail="alternating")
    assert res.value == 2.0 and res.bound == 0.0


# derivative ----------------------------------------------------------------

def test_lfd_examples():
    alpha, x0 = 0.5, 2.0
    value = lfd(make_function("x^(2*a)", alpha), x0, alpha).value
    assert value == pytest.approx(math.gamma(1 + 2 * alpha) / math.gamma(1 + alpha) * x0 ** alpha)
    assert lfd(make_function("x^2", 1.0), 3.0, 1.0).value == pytest.approx(6.0)
    assert lfd(make_function("x^a", 0.5), 1.0, 0.5).value == pytest.approx(0.886226925452758)


def test_lfd_numeric_path():
    res = lfd_numeric(lambda x: x ** 2, 3.0, 1.0)
    assert res.converged and res.value == pytest.approx(6.0, rel=1e-9)
    assert res.backward == pytest.approx(6.0, rel=1e-9)
    res = lfd_numeric(lambda x: x ** 0.5, 0.0, 0.5)
    assert res.value == pytest.approx(math.gamma(1.5), rel=1e-12)
    assert lfd(make_function("abs(x-1)^3", 1.0), 2.0, 1.0).method == "numeric"


def test_lfd_numeric_flags_non_convergence():
    res = lfd_numeric(lambda x: np.sin(1.0 / np.maximum(x, 1e-300)), 0.0, 0.5)
    assert not res.converged


def test_power_rule_drops_constants():
    d = lfd_poly(make_function("3 + x^a", 0.4).poly, 0.4)
    assert len(d.terms) == 1 and d.terms[0].exponent.is_zero


# operator checks -----------------------------------------------------------

def test_substitution():
    assert check_substitution(make_function("x^a", 0.5), 0.0, 1.0, 0, 1, 0.5) == 0.0
    assert check_substitution(make_function("x^2", 1.0), 2.0, 3.0, 0, 1, 1.0) <= 1e-10
    sym = make_function("(x-0.5)^2 + 1", 0.5)
    assert check_substitution(sym, 1.0, -1.0, 0, 1, 0.5, OP) <= 1e-12
    with pytest.raises(BackendCapabilityError):
        check_substitution(make_function("x^a", 0.5), 1.0, -1.0, 0, 1, 0.5, OP)


def test_substitution_quadrature_reflection_is_measured():
    f = make_function("x^a + x^2", 0.5)
    assert check_substitution(f, 0.2, 2.0, 0, 1, 0.5, QUAD) <= 1e-12
    assert check_substitution(f, 1.0, -1.0, 0, 1, 0.5, QUAD) > 1e-3


@pytest.mark.parametrize("alpha", [0.2, 0.37, 0.5, 0.8, 1.0])
@pytest.mark.parametrize("text", ["x^a", "x^(2*a)", "x^(a+a*s)", "(x-0.25)^(2*a)", "7"])
def test_newton_leibniz_on_basis(alpha, text):
    g = make_function(text, alpha, 0.5).poly
    assert check_newton_leibniz(g, 0, 1, alpha) <= 1e-12


def test_newton_leibniz_classical():
    assert check_newton_leibniz(make_function("x^3", 1.0).poly, 1, 2, 1.0) <= 1e-10


def test_parts():
    f, g = make_function("x", 1.0), make_function("x^2", 1.0)
    assert check_parts(f, g, 0, 1, 1.0, OP) <= 1e-10
    assert check_parts(f, g, 0, 1, 1.0, QUAD) <= 1e-10
    one, h = make_function("1", 0.5), make_function("x^(2*a)", 0.5)
    assert check_parts(one, h, 0, 1, 0.5) == pytest.approx(check_newton_leibniz(h.poly, 0, 1, 0.5))
    # measured, not asserted: the power-rule calculus is not parts-consistent for alpha < 1
    r = check_parts(make_function("x^a", 0.5), make_function("x^a", 0.5), 0, 1, 0.5, QUAD)
    assert math.isfinite(r)


def test_parts_product_outside_basis():
    f, g = make_function("(x-0.2)^a", 0.5), make_function("(x-0.6)^(2*a)", 0.5)
    with pytest.raises(BackendCapabilityError):
        check_parts(f, g, 0, 1, 0.5, OP)


def test_hoelder_examples():
    f, g = make_function("x", 1.0), make_function("1 - x", 1.0)
    assert check_hoelder(f, g, 0, 1, 1.0, 2, 2, QUAD) == pytest.approx(1 / 3 - 1 / 6, rel=1e-12)
    h = make_function("x^a + 1", 0.5)
    assert check_hoelder(h, h, 0, 1, 0.5, 2, 2) >= -1e-10
    assert check_hoelder(h, make_function("1", 0.5), 0, 1, 0.5, 3, 1.5) >= -1e-10
    with pytest.raises(ConfigurationError):
        check_hoelder(f, g, 0, 1, 1.0, 2, 3)
