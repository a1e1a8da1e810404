"""Exact arithmetic: rationals, dual numbers, polynomials, matrices."""
from .dual import EPS, DualRat, Rat, as_rat
from .linalg import inverse, nullspace, rank, rank_fraction, rref
from .matrix import ExactMatrix, charpoly, charpoly_coeffs, det, elementary_symmetric, minor, pfaffian
from .poly import MPoly, PolyRing, poly_sum

__all__ = [
    "EPS", "DualRat", "Rat", "as_rat", "inverse", "nullspace", "rank", "rank_fraction", "rref",
    "ExactMatrix", "charpoly", "charpoly_coeffs", "det", "elementary_symmetric", "minor", "pfaffian",
    "MPoly", "PolyRing", "poly_sum",
]
