"""Exact simplicity analysis for contracted inverse semigroup algebras,
ample groupoid convolution algebras, and self-similar inverse hulls."""

from .fields import GF, QQ, Field
from .semigroup import (
    InverseSemigroupTable,
    PartialBijection,
    generate_from_partial_bijections,
    natural_leq,
    validate_table,
)

__all__ = [
    "Field",
    "QQ",
    "GF",
    "InverseSemigroupTable",
    "PartialBijection",
    "validate_table",
    "natural_leq",
    "generate_from_partial_bijections",
]

__version__ = "0.1.0"
