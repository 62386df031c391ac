"""The Kauffman bracket skein algebra of the torus in the Frohman-Gelca basis.

A basis element is the class of ``(p, q)`` modulo ``(p, q) ~ (-p, -q)``.
The key ``(0, 0)`` is the Chebyshev value ``T_0 = 2``; it is kept as a
formal basis key so that the product-to-sum rule stays closed.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, Iterable, Tuple

from .ring import LaurentPoly, ONE

TorusClass = Tuple[int, int]


def canonical_class(p: int, q: int) -> TorusClass:
    """Representative of the +-orbit with p > 0, or p == 0 and q >= 0."""
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)


class TorusSkein:
    """A finite Z[A^+-1]-combination of torus basis classes."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[TorusClass, LaurentPoly] | None = None):
        self.terms: Dict[TorusClass, LaurentPoly] = {}
        for key, coeff in (terms or {}).items():
            self._accumulate(canonical_class(*key), coeff)

    def _accumulate(self, key: TorusClass, coeff: LaurentPoly) -> None:
        if coeff.is_zero():
            return
        total = self.terms.get(key)
        total = coeff if total is None else total + coeff
        if total.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = total

    @classmethod
    def basis(cls, p: int, q: int, coeff: LaurentPoly = ONE) -> "TorusSkein":
        return cls({(p, q): coeff})

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusSkein) and self.terms == other.terms

    def __add__(self, other: "TorusSkein") -> "TorusSkein":
        out = TorusSkein(self.terms)
        for k, c in other.terms.items():
            out._accumulate(k, c)
        return out

    def __neg__(self) -> "TorusSkein":
        return TorusSkein({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TorusSkein") -> "TorusSkein":
        return self + (-other)

    def __mul__(self, other: "TorusSkein") -> "TorusSkein":
        return ts_product(self, other)

    def scale(self, c: LaurentPoly) -> "TorusSkein":
        return TorusSkein({k: v * c for k, v in self.terms.items()})

    def bar(self) -> "TorusSkein":
        return TorusSkein({k: v.bar() for k, v in self.terms.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{k}" for k, c in sorted(self.terms.items()))
        return f"TorusSkein({body or '0'})"

    def to_json(self) -> list:
        return [[list(k), c.to_json()] for k, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "TorusSkein":
        return cls({tuple(k): LaurentPoly.from_json(c) for k, c in data})


def ts_product(x: TorusSkein, y: TorusSkein) -> TorusSkein:
    """Bilinear extension of (p,q)(r,s) = A^(ps-qr) (p+r,q+s) + A^(qr-ps) (p-r,q-s)."""
    out = TorusSkein()
    for (p, q), a in x.terms.items():
        for (r, s), b in y.terms.items():
            ab = a * b
            e = p * s - q * r
            out._accumulate(canonical_class(p + r, q + s), ab.shift(e))
            out._accumulate(canonical_class(p - r, q - s), ab.shift(-e))
    return out


def ts_chebyshev(d: int, c: TorusClass) -> TorusSkein:
    """T_d evaluated at the primitive class ``c`` via T_{n+1} = X T_n - T_{n-1}.

    The recurrence starts from T_0 = (0,0) (the value 2) and T_1 = X; the
    result must collapse to the single class (d p, d q).
    """
    p, q = c
    if d < 1:
        raise ValueError("d must be a positive integer")
    if gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"class {c} is not primitive")
    x = TorusSkein.basis(p, q)
    prev, cur = TorusSkein.basis(0, 0), x
    for _ in range(d - 1):
        prev, cur = cur, ts_product(x, cur) - prev
    expected = canonical_class(d * p, d * q)
    if cur.terms != {expected: ONE}:
        raise AssertionError(f"Chebyshev expansion of T_{d}{c} did not collapse: {cur}")
    return cur
