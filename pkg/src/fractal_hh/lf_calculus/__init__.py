"""Local fractional integral and derivative with interchangeable realizations."""

from .backend import OPERATIONAL, QUADRATURE, Integrand, LfiBackend
from .checks import check_hoelder, check_newton_leibniz, check_parts, check_substitution
from .derivative import LfdResult, derivative_values, lfd, lfd_numeric, lfd_poly
from .integral import (abs_moment, abs_moment_detail, lemma23_discrepancy, lfi, lfi_poly,
                       moment, term_integral)
from .quadrature import rl_quad
from .series import SeriesResult, sum_series

__all__ = [
    "OPERATIONAL", "QUADRATURE", "Integrand", "LfiBackend", "LfdResult", "SeriesResult",
    "abs_moment", "abs_moment_detail", "check_hoelder", "check_newton_leibniz", "check_parts",
    "check_substitution", "derivative_values", "lemma23_discrepancy", "lfd", "lfd_numeric",
    "lfd_poly", "lfi", "lfi_poly", "moment", "rl_quad", "sum_series", "term_integral",
]
