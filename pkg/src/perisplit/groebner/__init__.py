"""Groebner bases, Hilbert series and Koszul homology over Q."""
from .hilbert import HilbertSeries, monomial_numerator
from .ideal import (
    INFINITE, GroebnerBasis, IdealPresentation, eliminate, groebner_basis, hilbert_series,
    ideal_contains, ideals_equal, quotient_dimension, standard_monomials,
)
from .koszul import BettiTable, TorReport, euler_check, koszul_tor, tor_from_basis
from .orders import MonomialOrder

__all__ = [
    "HilbertSeries", "monomial_numerator", "INFINITE", "GroebnerBasis", "IdealPresentation",
    "eliminate", "groebner_basis", "hilbert_series", "ideal_contains", "ideals_equal",
    "quotient_dimension", "standard_monomials", "MonomialOrder",
    "BettiTable", "TorReport", "euler_check", "koszul_tor", "tor_from_basis",
]
