"""Exact Fibonomial, Gaussian and binomial coefficients with brute-force cross-checks."""

from .errors import (
    BadRange,
    BadVertex,
    CapExceeded,
    CombinatoricsError,
    NonIntegralFnomial,
    NonPrimeField,
    NotNonpermutable,
    UnsupportedRecurrence,
)
from .sequences import FSequence, f_factorial, f_term, parse_sequence

__version__ = "0.1.0"

__all__ = [
    "BadRange",
    "BadVertex",
    "CapExceeded",
    "CombinatoricsError",
    "FSequence",
    "NonIntegralFnomial",
    "NonPrimeField",
    "NotNonpermutable",
    "UnsupportedRecurrence",
    "f_factorial",
    "f_term",
    "parse_sequence",
]
