"""Cyclotomic charged L-graphs over O_Q(sqrt d), d in {-2, -7, -11, -15}."""

from .ring import Ring, RingElement, get_ring, label_set
from .lgraph import LGraph
from .spectra import IntPolynomial, char_poly, is_cyclotomic

__all__ = [
    "Ring",
    "RingElement",
    "get_ring",
    "label_set",
    "LGraph",
    "IntPolynomial",
    "char_poly",
    "is_cyclotomic",
]
