"""Coprime solutions of X^2 - (a^2+b^2) Y^4 = -b^2: Pell data, quadratic
families, direct search, hypergeometric bounds and the finite census."""

from .arith import GaussianInteger, GaussianRational, HighPrecisionComplex
from .errors import (ConsistencyError, HypothesisNotMet, PrecisionExhausted, QuarticPellError,
                     ReproductionFailure, TheoremViolation)
from .pell import PellData, solve_pell
from .quadfam import EquationInstance, enumerate_families
from .quartic import QuarticSolution, solve_all, solve_coprime
from .squarescan import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ConsistencyError", "EquationInstance", "GaussianInteger", "GaussianRational",
    "HighPrecisionComplex", "HypothesisNotMet", "PellData", "PrecisionExhausted",
    "QuarticPellError", "QuarticSolution", "ReproductionFailure", "TheoremViolation",
    "enumerate_families", "solve_all", "solve_coprime", "solve_pell",
]
