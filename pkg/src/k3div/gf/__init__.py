"""Finite fields of characteristic 2 and univariate polynomials over them."""

from .field import GF2, FiniteField2k
from .parse import ParseError, parse_field, parse_poly
from .poly import Poly, factor, gcd, is_irreducible, squarefree_decomposition

__all__ = [
    "GF2",
    "FiniteField2k",
    "ParseError",
    "Poly",
    "factor",
    "gcd",
    "is_irreducible",
    "parse_field",
    "parse_poly",
    "squarefree_decomposition",
]
