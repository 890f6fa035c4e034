"""Verification harness for the Hermite-Hadamard chain and trapezoid-type bounds."""

from .constants import (convexity_factor, endpoint_constant, holder_factor, kconst,
                        midpoint_constant)
from .core import (THEOREMS, TheoremCase, VerificationResult, trapezoid_defect, verify,
                   verify_lemma31, verify_thm31, verify_thm32, verify_thm33)
from .sweep import (DEFAULT_FAMILY, SharpnessReport, SweepGrid, SweepSummary, build_cases,
                    family_for, run_cases, sharpness_probe, summarize, sweep)

__all__ = [
    "DEFAULT_FAMILY", "THEOREMS", "SharpnessReport", "SweepGrid", "SweepSummary", "TheoremCase",
    "VerificationResult", "build_cases", "convexity_factor", "endpoint_constant", "family_for",
    "holder_factor", "kconst", "midpoint_constant", "run_cases", "sharpness_probe", "summarize",
    "sweep", "trapezoid_defect", "verify", "verify_lemma31", "verify_thm31", "verify_thm32",
    "verify_thm33",
]
