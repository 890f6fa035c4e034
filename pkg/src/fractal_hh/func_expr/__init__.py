"""Test-function layer: expression language, normal form, convexity certifiers."""

from .ast import parse, to_text
from .convexity import CertGrid, CertReport, certify_gks1, certify_gks2, estimate_holder
from .handle import FunctionHandle, eval, make_function
from .poly import FractalPoly, NotPolynomial, SymbolicExponent, Term, lower_to_poly

__all__ = [
    "CertGrid", "CertReport", "FractalPoly", "FunctionHandle", "NotPolynomial",
    "SymbolicExponent", "Term", "certify_gks1", "certify_gks2", "estimate_holder",
    "eval", "lower_to_poly", "make_function", "parse", "to_text",
]
