"""Finite and linear (marked) *-categories: constructions and exhaustive checks."""

from .fincat import (BoundExceeded, CategoryError, FinCategory, Functor, ParseError, Verdict,
                     validate_category)
from .linear import LinearStarCategory, LinFunctor, linearize, validate_linear

__version__ = "0.1.0"

__all__ = ["BoundExceeded", "CategoryError", "FinCategory", "Functor", "LinFunctor",
           "LinearStarCategory", "ParseError", "Verdict", "linearize", "validate_category",
           "validate_linear"]
