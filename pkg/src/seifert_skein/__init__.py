"""Kauffman bracket skein modules and SL2(C) character varieties of small
Seifert fibered spaces M(q1/p1, q2/p2, q3/p3) over S^2."""

from .characters import enumerate_characters, irreducible_count, is_reduced, skein_dimension
from .homology import abelian_count, exceptional_count, h1_order
from .ring import LaurentPoly
from .seifert import SeifertData, euler_number, normalize, seifert_from_string
from .torus import TorusSkein, ts_chebyshev, ts_product

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "SeifertData", "TorusSkein", "abelian_count", "enumerate_characters",
    "euler_number", "exceptional_count", "h1_order", "irreducible_count", "is_reduced",
    "normalize", "seifert_from_string", "skein_dimension", "ts_chebyshev", "ts_product",
]
