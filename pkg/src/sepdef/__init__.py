"""Exact construction and verification of separable deformations of kG_s."""

from __future__ import annotations

from .errors import (
    ConsistencyError,
    InexactDivisionError,
    MixedFieldError,
    NotUnitalError,
    ParseError,
    PoleError,
    SamplingError,
    ValidationError,
)
from .scalars import GF, poly_ring, rational_function_field
from .upoly import Poly

__version__ = "0.1.0"

__all__ = [
    "GF", "Poly", "poly_ring", "rational_function_field",
    "ConsistencyError", "InexactDivisionError", "MixedFieldError", "NotUnitalError",
    "ParseError", "PoleError", "SamplingError", "ValidationError",
]
