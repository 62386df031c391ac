"""Exact arithmetic in Z[A, A^-1] and exact rationals.

Laurent polynomials are stored as a dict ``{exponent: coefficient}`` with
Python ints, so coefficients never overflow. Zero coefficients are never
stored; the zero polynomial has an empty dict.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = int(c)
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            return LaurentPoly._raw({e + eb: c * cb for e, c in a.items()})
        t: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                t[e] = t.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by A^n."""
        if not n:
            return self
        return LaurentPoly._raw({e + n: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution A -> A^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and next(iter(self._terms.values())) in (1, -1)

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit of Z[A^+-1]")
        (e, c), = self._terms.items()
        return LaurentPoly._raw({-e: c})

    def degree_span(self) -> tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms), max(self._terms)

    def evaluate(self, a: complex) -> complex:
        return sum(c * a ** e for e, c in self._terms.items())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(sorted(self._terms.items())):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> list:
        return [[e, str(c)] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: accepts e.g. ``"-A^-2 + 3 - 2*A^2"``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        terms: dict = {}
        for m in _TERM_RE.finditer(s):
            sign, coeff, var, exp = m.groups()
            if not (coeff or var):
                continue
            c = int(coeff) if coeff else 1
            if sign == "-":
                c = -c
            e = 0 if not var else (int(exp) if exp else 1)
            terms[e] = terms.get(e, 0) + c
        if _TERM_RE.sub("", s):
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        return cls(terms)


_TERM_RE = re.compile(r"([+-]?)(\d+)?\*?(A(?:\^(-?\d+))?)?")

ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
A = LaurentPoly.monomial(1)
# -A^2 - A^-2, the value of a trivial circle
DELTA = LaurentPoly({2: -1, -2: -1})


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_is_unit(a: LaurentPoly) -> bool:
    return a.is_unit()


def rational_to_json(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def rational_from_json(s: str) -> Fraction:
    return Fraction(s)
