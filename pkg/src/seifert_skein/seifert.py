"""Seifert fibered spaces M(q1/p1, q2/p2, q3/p3) over S^2 and their basic invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import EulerZero

Slope = Tuple[int, int]  # (p, q): meridian glued to p*c + q*h
Word = Tuple[Tuple[str, int], ...]  # syllables (generator, exponent)


def _check_slope(p: int, q: int) -> None:
    if p < 1:
        raise ValueError(f"fiber multiplicity must be >= 1, got p={p}")
    if math.gcd(p, abs(q)) != 1:
        raise ValueError(f"slope {q}/{p} is not in lowest terms")


@dataclass(frozen=True)
class SeifertData:
    """Ordered triple of filling slopes ``((p1,q1), (p2,q2), (p3,q3))``."""

    slopes: Tuple[Slope, Slope, Slope]

    def __post_init__(self):
        slopes = tuple((int(p), int(q)) for p, q in self.slopes)
        if len(slopes) != 3:
            raise ValueError("exactly three slopes are required")
        for p, q in slopes:
            _check_slope(p, q)
        object.__setattr__(self, "slopes", slopes)

    @classmethod
    def of(cls, *pairs: Slope) -> "SeifertData":
        return cls(tuple(pairs))

    @property
    def p(self) -> Tuple[int, int, int]:
        return tuple(s[0] for s in self.slopes)

    @property
    def q(self) -> Tuple[int, int, int]:
        return tuple(s[1] for s in self.slopes)

    def epsilons(self) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple(Fraction(q, p) for p, q in self.slopes)

    def permuted(self, perm: Sequence[int]) -> "SeifertData":
        return SeifertData(tuple(self.slopes[i] for i in perm))

    def slope_string(self) -> str:
        return ",".join(f"{q}/{p}" for p, q in self.slopes)

    def __str__(self) -> str:
        return f"M({self.slope_string()})"


@dataclass(frozen=True)
class GeneralSeifertData:
    base: str  # "S2" or "RP2"
    slopes: Tuple[Slope, ...]

    def __post_init__(self):
        if self.base not in ("S2", "RP2"):
            raise ValueError(f"unsupported base orbifold {self.base!r}")
        slopes = tuple((int(p), int(q)) for p, q in self.slopes)
        for p, q in slopes:
            _check_slope(p, q)
        object.__setattr__(self, "slopes", slopes)

    def exceptional(self) -> Tuple[Slope, ...]:
        return tuple(s for s in self.slopes if s[0] >= 2)


def parse_slopes(text: str) -> List[Slope]:
    """Parse ``"q1/p1,q2/p2,..."`` into ``[(p1, q1), ...]``. A bare integer means p = 1."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            raise ValueError(f"empty slope in {text!r}")
        if "/" in tok:
            num, den = tok.split("/", 1)
            q, p = int(num), int(den)
        else:
            q, p = int(tok), 1
        if p < 0:
            p, q = -p, -q
        _check_slope(p, q)
        out.append((p, q))
    return out


def seifert_from_string(text: str) -> SeifertData:
    slopes = parse_slopes(text)
    if len(slopes) != 3:
        raise ValueError(f"expected three slopes, got {len(slopes)}")
    return SeifertData(tuple(slopes))


def euler_number(m: SeifertData) -> Fraction:
    return sum(m.epsilons(), Fraction(0))


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def normalize(m: SeifertData) -> SeifertData:
    """Representative of the same manifold (up to orientation) with e > 0,
    eps1 > 0 and eps2, eps3 in (-1, 0].

    Integer shifts summing to zero preserve the manifold; reversing the
    orientation negates every q_i.
    """
    e = euler_number(m)
    if e == 0:
        raise EulerZero(f"{m} has Euler number 0 (infinite H_1, Haken case)")
    eps = list(m.epsilons())
    if e < 0:
        eps = [-x for x in eps]
    s2, s3 = _ceil(eps[1]), _ceil(eps[2])
    eps = [eps[0] + s2 + s3, eps[1] - s2, eps[2] - s3]
    out = SeifertData(tuple((x.denominator, x.numerator) for x in eps))
    e1, e2, e3 = eps
    lhs = abs(e1) + 1
    rhs = max(abs(e2 - 1) + abs(e3), abs(e2) + abs(e3 + 1))
    assert e1 > 0 and e2 <= 0 and e3 <= 0 and lhs > rhs, out
    return out


def is_normalized(m: SeifertData) -> bool:
    e1, e2, e3 = m.epsilons()
    return e1 + e2 + e3 > 0 and -1 < e2 <= 0 and -1 < e3 <= 0


def classify_character_variety(m: GeneralSeifertData) -> Tuple[str, str]:
    """Decide whether X(M) is finite, returning ``(verdict, case_label)``."""
    n = len(m.exceptional())
    if m.base == "S2":
        if n >= 4:
            return "infinite", "S2 base, >=4 exceptional fibers (Haken)"
        e = sum((Fraction(q, p) for p, q in m.slopes), Fraction(0))
        if e != 0:
            return "finite", f"S2 base, {n} exceptional fibers, e != 0 (non-Haken)"
        if n == 3:
            return "infinite", "S2 base, 3 exceptional fibers, e = 0 (Haken)"
        return "infinite", "S2 base, <=2 exceptional fibers, e = 0 (S2xS1)"
    if n >= 2:
        return "infinite", "RP2 base, >=2 exceptional fibers (Haken)"
    return "finite", "RP2 base, <=1 exceptional fiber (prism, lens or RP3#RP3)"


def presentation(m: SeifertData) -> List[Word]:
    """Relators of pi_1: [c_i, h], c_i^p_i h^q_i (i=1,2,3) and c1 c2 c3."""
    words: List[Word] = []
    for i in (1, 2, 3):
        c = f"c{i}"
        words.append(((c, 1), ("h", 1), (c, -1), ("h", -1)))
    for i, (p, q) in enumerate(m.slopes, start=1):
        w = [(f"c{i}", p)]
        if q:
            w.append(("h", q))
        words.append(tuple(w))
    words.append((("c1", 1), ("c2", 1), ("c3", 1)))
    return words


def word_to_string(word: Word) -> str:
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word)
