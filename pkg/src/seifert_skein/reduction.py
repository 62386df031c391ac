"""Rewriting generators L_v of the skein module of M(q1/p1, q2/p2, q3/p3).

An index v = (k1, l1, k2, l2, k3, l3) labels the product of the torus classes
(k_i, l_i) on the three boundary tori of the pair of pants times S^1. Three
families of relations are available:

* meridian: the filling slope (p_i, q_i) bounds a disk, so multiplying by it
  in the torus algebra gives A^w L_{v+d} + A^-w L_{v-d} = -(A^2+A^-2) L_v;
* fiber: pushing the S^1 fiber from torus 1 to torus j;
* r5: a twelve-term identity that lowers w_1 once it is large.

Every rewrite is checked at runtime to replace its head by strictly smaller
indices under the key (c, -c1, offset distance).
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import BudgetExceeded, DescentViolation, HypothesisNotMet
from .ring import LaurentPoly
from .seifert import SeifertData, is_normalized, normalize

GeneratorIndex = Tuple[int, int, int, int, int, int]
Poly = Dict[int, int]  # raw exponent -> coefficient map used in the hot loop


# ----------------------------------------------------------------------------
# indices and complexity
# ----------------------------------------------------------------------------

def _canon_pair(p: int, q: int, k: int, l: int) -> Tuple[int, int]:
    w = q * k - p * l
    if w < 0 or (w == 0 and (k < 0 or (k == 0 and l < 0))):
        return -k, -l
    return k, l


def canonical_index(v: Iterable[int], m: SeifertData) -> GeneratorIndex:
    """Flip each torus pair so that w_i >= 0 (ties: k_i >= 0, then l_i >= 0)."""
    v = tuple(int(x) for x in v)
    if len(v) != 6:
        raise ValueError("a generator index has six entries")
    (p1, q1), (p2, q2), (p3, q3) = m.slopes
    return (_canon_pair(p1, q1, v[0], v[1]) + _canon_pair(p2, q2, v[2], v[3])
            + _canon_pair(p3, q3, v[4], v[5]))


def w_values(v: GeneratorIndex, m: SeifertData) -> Tuple[int, int, int]:
    return tuple(q * v[2 * i] - p * v[2 * i + 1] for i, (p, q) in enumerate(m.slopes))


@dataclass(frozen=True, order=True)
class Complexity:
    c: Fraction
    neg_c1: int

    def to_json(self) -> dict:
        return {"c": f"{self.c.numerator}/{self.c.denominator}", "neg_c1": self.neg_c1}


def complexity(v: GeneratorIndex, m: SeifertData) -> Complexity:
    w = w_values(v, m)
    c = sum((Fraction(abs(x), p) for x, p in zip(w, m.p)), Fraction(0))
    return Complexity(c, -abs(w[0]))


def coset_offsets(v: GeneratorIndex, m: SeifertData) -> Tuple[int, int, int]:
    """Offsets t_i with (k_i, l_i) = base + t_i (p_i, q_i), base having k_i in [0, p_i)."""
    return tuple(v[2 * i] // p for i, p in enumerate(m.p))


def _dist(t: int) -> int:
    return t - 1 if t >= 2 else (-t if t < 0 else 0)


def terminal_bounds(m: SeifertData) -> Tuple[int, int, int]:
    """(w1 limit exclusive, w2 limit inclusive, w3 limit inclusive)."""
    (p1, q1), (p2, _), (p3, _) = m.slopes
    return 2 * abs(q1) + 2 * p1, p2, p3


def is_terminal(v: GeneratorIndex, m: SeifertData) -> bool:
    t1, t2, t3 = terminal_bounds(m)
    w = w_values(v, m)
    return (abs(w[0]) < t1 and abs(w[1]) <= t2 and abs(w[2]) <= t3
            and all(t in (0, 1) for t in coset_offsets(v, m)))


# ----------------------------------------------------------------------------
# skein elements
# ----------------------------------------------------------------------------

class SkeinElement:
    """Finite combination of canonical generators with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[GeneratorIndex, LaurentPoly]] = None):
        self.terms: Dict[GeneratorIndex, LaurentPoly] = {}
        for v, c in (terms or {}).items():
            self._accumulate(tuple(v), c)

    def _accumulate(self, v: GeneratorIndex, c: LaurentPoly) -> None:
        total = self.terms.get(v)
        total = c if total is None else total + c
        if total.is_zero():
            self.terms.pop(v, None)
        else:
            self.terms[v] = total

    @classmethod
    def generator(cls, v: Iterable[int], m: SeifertData,
                  coeff: LaurentPoly = LaurentPoly.const(1)) -> "SkeinElement":
        return cls({canonical_index(v, m): coeff})

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        out = SkeinElement(self.terms)
        for v, c in other.terms.items():
            out._accumulate(v, c)
        return out

    def __neg__(self) -> "SkeinElement":
        return SkeinElement({v: -c for v, c in self.terms.items()})

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        return self + (-other)

    def scale(self, c: LaurentPoly) -> "SkeinElement":
        return SkeinElement({v: x * c for v, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SkeinElement) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def support(self) -> List[GeneratorIndex]:
        return sorted(self.terms)

    def to_json(self) -> list:
        return [[list(v), c.to_json()] for v, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "SkeinElement":
        return cls({tuple(v): LaurentPoly.from_json(c) for v, c in data})

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*L{v}" for v, c in sorted(self.terms.items()))
        return f"SkeinElement({body or '0'})"


# ----------------------------------------------------------------------------
# rules
# ----------------------------------------------------------------------------

Unit = Tuple[int, int]  # (sign, exponent) for sign * A^exponent


@dataclass(frozen=True)
class R5CoefficientTable:
    """Unit prefactors of the four diagram groups in the r5 identity
    ``left1 * D1 + left2 * D2 = right1 * D3 + right2 * D4``."""

    left1: Unit = (1, 0)
    left2: Unit = (1, 0)
    right1: Unit = (1, 0)
    right2: Unit = (1, 0)

    def __post_init__(self):
        for name in ("left1", "left2", "right1", "right2"):
            sign, _ = getattr(self, name)
            if sign not in (1, -1):
                raise ValueError(f"{name} must be a unit +-A^n")

    def to_json(self) -> dict:
        return {k: list(getattr(self, k)) for k in ("left1", "left2", "right1", "right2")}


DEFAULT_R5_TABLE = R5CoefficientTable()

# A relation is a list of (sign, exponent, delta_factor, index) meaning
# sign * A^exponent * (-(A^2+A^-2))^delta_factor * L_index; the sum is zero.
Relation = List[Tuple[int, int, int, GeneratorIndex]]


def _to_element(rel: Relation, m: SeifertData) -> SkeinElement:
    out = SkeinElement()
    for sign, e, dlt, v in rel:
        c = LaurentPoly.monomial(e, sign)
        if dlt:
            c = c * LaurentPoly({2: -1, -2: -1})
        out._accumulate(canonical_index(v, m), c)
    return out


def _meridian_relation(v: GeneratorIndex, i: int, m: SeifertData) -> Relation:
    p, q = m.slopes[i - 1]
    k, l = v[2 * i - 2], v[2 * i - 1]
    w = q * k - p * l

    def moved(s: int) -> GeneratorIndex:
        u = list(v)
        u[2 * i - 2] += s * p
        u[2 * i - 1] += s * q
        return tuple(u)

    return [(1, w, 0, moved(1)), (1, -w, 0, moved(-1)), (-1, 0, 1, v)]


def rule_meridian(v: Iterable[int], i: int, m: SeifertData) -> SkeinElement:
    """The relation A^w L_{v+d_i} + A^-w L_{v-d_i} - (-(A^2+A^-2)) L_v, which vanishes."""
    if i not in (1, 2, 3):
        raise ValueError("torus index must be 1, 2 or 3")
    return _to_element(_meridian_relation(canonical_index(v, m), i, m), m)


def _meridian_rewrite(v: GeneratorIndex, i: int, t: int, m: SeifertData) -> Relation:
    """L_v in terms of indices one and two steps closer to the offset window."""
    p, q = m.slopes[i - 1]
    k, l = v[2 * i - 2], v[2 * i - 1]
    w = q * k - p * l
    s = -1 if t >= 2 else 1

    def moved(n: int) -> GeneratorIndex:
        u = list(v)
        u[2 * i - 2] += n * s * p
        u[2 * i - 1] += n * s * q
        return tuple(u)

    # t >= 2: A^w L_v + A^-w L_{v-2d} = delta L_{v-d}
    # t < 0:  A^w L_{v+2d} + A^-w L_v = delta L_{v+d}
    if s < 0:
        return [(1, -w, 1, moved(1)), (-1, -2 * w, 0, moved(2))]
    return [(1, w, 1, moved(1)), (-1, 2 * w, 0, moved(2))]


def _fiber_rewrite(v: GeneratorIndex, j: int) -> Relation:
    # A^{kj} L_{v+2e} + A^{-kj} L_v = A^{k1} L_{v+e1+e} + A^{-k1} L_{v-e1+e}
    k1, kj = v[0], v[2 * j - 2]
    lj = 2 * j - 1

    def shifted(d1: int, dj: int) -> GeneratorIndex:
        u = list(v)
        u[1] += d1
        u[lj] += dj
        return tuple(u)

    return [
        (1, k1 + kj, 0, shifted(1, 1)),
        (1, kj - k1, 0, shifted(-1, 1)),
        (-1, 2 * kj, 0, shifted(0, 2)),
    ]


def rule_fiber(v: Iterable[int], j: int, m: SeifertData) -> SkeinElement:
    """L_v rewritten by the fiber relation between torus 1 and torus j (j = 2, 3)."""
    if j not in (2, 3):
        raise ValueError("the fiber rule reduces torus 2 or 3")
    v = canonical_index(v, m)
    w = w_values(v, m)
    if w[j - 1] <= m.p[j - 1]:
        raise HypothesisNotMet(f"c_{j}(v) = {w[j - 1]} is not above p_{j} = {m.p[j - 1]}")
    return _to_element(_fiber_rewrite(v, j), m)


def fiber_relation_from_products(v: Iterable[int], j: int, m: SeifertData) -> SkeinElement:
    """The fiber relation rebuilt from the torus product, as an element that must vanish.

    With u = v + e_{l_j}, the fiber (0,1) pushed next to torus j gives
    (k_j, l_j + 1) * (0, 1) on that torus, and pushed next to torus 1 gives
    (k_1, l_1) * (0, 1) there; the difference of the two expansions is returned.
    """
    from .torus import TorusSkein, ts_product

    v = tuple(v)
    fiber = TorusSkein.basis(0, 1)
    out = SkeinElement()
    near_j = ts_product(TorusSkein.basis(v[2 * j - 2], v[2 * j - 1] + 1), fiber)
    near_1 = ts_product(TorusSkein.basis(v[0], v[1]), fiber)
    for (a, b), c in near_j.terms.items():
        u = list(v)
        u[2 * j - 2], u[2 * j - 1] = a, b
        out._accumulate(canonical_index(u, m), c)
    for (a, b), c in near_1.terms.items():
        u = list(v)
        u[0], u[1] = a, b
        u[2 * j - 1] += 1
        out._accumulate(canonical_index(u, m), -c)
    return out


def _r5_rewrite(u: GeneratorIndex, table: R5CoefficientTable) -> Relation:
    k1, l1, k2, l2, k3, l3 = u[0] - 1, u[1] + 1, u[2], u[3], u[4], u[5]
    base = (k1, l1, k2, l2, k3, l3)

    def at(d: Tuple[int, ...]) -> GeneratorIndex:
        return tuple(x + y for x, y in zip(base, d))

    left1 = [((1, -1, 0, 0, 0, 0), -(k1 + l1)), ((-1, 1, 0, 0, 0, 0), k1 + l1)]
    left2 = [((0, 0, 1, 1, 1, 0), k2 - l2 - l3), ((0, 0, -1, -1, 1, 0), l2 - k2 - l3),
             ((0, 0, 1, 1, -1, 0), k2 - l2 + l3), ((0, 0, -1, -1, -1, 0), l2 - k2 + l3)]
    right1 = [((0, 0, 1, 0, 1, -1), -l2 - k3 - l3), ((0, 0, -1, 0, 1, -1), l2 - k3 - l3),
              ((0, 0, 1, 0, -1, 1), -l2 + k3 + l3), ((0, 0, -1, 0, -1, 1), l2 + k3 + l3)]
    right2 = [((1, 1, 0, 0, 0, 0), k1 - l1), ((-1, -1, 0, 0, 0, 0), l1 - k1)]
    # head: left1 * A^{-(k1+l1)} L_u; everything else moves across
    s0, e0 = table.left1
    head_e = e0 - (k1 + l1)
    out: Relation = []

    def emit(group, unit, sign_flip):
        s, e = unit
        for d, x in group:
            out.append((sign_flip * s * s0, e + x - head_e, 0, at(d)))

    emit(left1[1:], table.left1, -1)
    emit(left2, table.left2, -1)
    emit(right1, table.right1, 1)
    emit(right2, table.right2, 1)
    return out


def rule_r5(u: Iterable[int], m: SeifertData,
            table: R5CoefficientTable = DEFAULT_R5_TABLE) -> SkeinElement:
    """L_u rewritten by the twelve-term identity; u plays the role of v1."""
    if not is_normalized(m):
        raise HypothesisNotMet(f"{m} is not normalized")
    u = canonical_index(u, m)
    limit = terminal_bounds(m)[0]
    w1 = w_values(u, m)[0]
    if w1 < limit:
        raise HypothesisNotMet(f"c_1(u) = {w1} is below 2|q1|+2p1 = {limit}")
    rel = _r5_rewrite(u, table)
    _check_descent(_Keyer(m), "r5", u, [r[3] for r in rel])
    return _to_element(rel, m)


# ----------------------------------------------------------------------------
# reduction driver
# ----------------------------------------------------------------------------

class _Keyer:
    """Integer-scaled sort key (P*c, c1, dist) with P = p1 p2 p3, plus canonicalization."""

    def __init__(self, m: SeifertData):
        self.slopes = m.slopes
        P = math.prod(m.p)
        self.scale = tuple(P // p for p in m.p)

    def canon(self, v: GeneratorIndex) -> GeneratorIndex:
        (p1, q1), (p2, q2), (p3, q3) = self.slopes
        k1, l1, k2, l2, k3, l3 = v
        w = q1 * k1 - p1 * l1
        if w < 0 or (w == 0 and (k1 < 0 or (k1 == 0 and l1 < 0))):
            k1, l1 = -k1, -l1
        w = q2 * k2 - p2 * l2
        if w < 0 or (w == 0 and (k2 < 0 or (k2 == 0 and l2 < 0))):
            k2, l2 = -k2, -l2
        w = q3 * k3 - p3 * l3
        if w < 0 or (w == 0 and (k3 < 0 or (k3 == 0 and l3 < 0))):
            k3, l3 = -k3, -l3
        return (k1, l1, k2, l2, k3, l3)

    def key(self, v: GeneratorIndex) -> Tuple[int, int, int]:
        (p1, q1), (p2, q2), (p3, q3) = self.slopes
        w1 = abs(q1 * v[0] - p1 * v[1])
        w2 = abs(q2 * v[2] - p2 * v[3])
        w3 = abs(q3 * v[4] - p3 * v[5])
        s1, s2, s3 = self.scale
        dist = _dist(v[0] // p1) + _dist(v[2] // p2) + _dist(v[4] // p3)
        return (w1 * s1 + w2 * s2 + w3 * s3, -w1, dist)


def descent_key(v: Iterable[int], m: SeifertData) -> Tuple[int, int, int]:
    """Sort key the engine lowers on every rewrite: (p1 p2 p3 * c, c1, offset distance)."""
    k = _Keyer(m)
    return k.key(k.canon(tuple(v)))


def _check_descent(keyer: _Keyer, rule: str, head: GeneratorIndex,
                   outputs: Iterable[GeneratorIndex]) -> None:
    hk = keyer.key(head)
    for v in outputs:
        if keyer.key(keyer.canon(v)) >= hk:
            raise DescentViolation(f"{rule} on {head} emitted {keyer.canon(v)} "
                                   f"with key {keyer.key(keyer.canon(v))} >= {hk}")


@dataclass(frozen=True)
class TraceStep:
    rule: str
    head: GeneratorIndex
    outputs: Tuple[GeneratorIndex, ...]

    def to_json(self) -> dict:
        return {"rule": self.rule, "head": list(self.head), "outputs": [list(v) for v in self.outputs]}


@dataclass
class ReductionTrace:
    steps: List[TraceStep] = field(default_factory=list)
    counts: Dict[str, int] = field(default_factory=dict)
    record: bool = True

    def add(self, rule: str, head: GeneratorIndex, outputs: Tuple[GeneratorIndex, ...]) -> None:
        self.counts[rule] = self.counts.get(rule, 0) + 1
        if self.record:
            self.steps.append(TraceStep(rule, head, outputs))

    @property
    def uses_r5(self) -> bool:
        return self.counts.get("r5", 0) > 0

    @property
    def coefficient_note(self) -> str:
        if self.uses_r5:
            return "coefficients modulo framing normalization (r5 prefactors are configured, not derived)"
        return "exact"

    def __len__(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "counts": dict(sorted(self.counts.items())),
                "coefficients": self.coefficient_note}


POLICIES = ("offsets-first", "fiber-first")


def _choose_rule(v: GeneratorIndex, m: SeifertData, limits, policy: str) -> Tuple[str, int]:
    (p1, q1), (p2, q2), (p3, q3) = m.slopes
    if policy == "offsets-first":
        for i, p in enumerate(m.p, start=1):
            t = v[2 * i - 2] // p
            if t >= 2 or t < 0:
                return "meridian", i
    if q2 * v[2] - p2 * v[3] > p2:
        return "fiber", 2
    if q3 * v[4] - p3 * v[5] > p3:
        return "fiber", 3
    if q1 * v[0] - p1 * v[1] >= limits[0]:
        return "r5", 0
    for i, p in enumerate(m.p, start=1):
        t = v[2 * i - 2] // p
        if t >= 2 or t < 0:
            return "meridian", i
    return "terminal", 0


class _OffsetTable:
    """L_t = a_t L_0 + b_t L_1 along one coset, from the meridian recurrence."""

    def __init__(self):
        self.cache: Dict[Tuple[int, int], Tuple[Poly, Poly]] = {}

    def get(self, w: int, t: int) -> Tuple[Poly, Poly]:
        key = (w, t)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        if t == 0:
            out = ({0: 1}, {})
        elif t == 1:
            out = ({}, {0: 1})
        elif t >= 2:
            # L_t = -(A^{2-w} + A^{-2-w}) L_{t-1} - A^{-2w} L_{t-2}
            out = self._combine(self.get(w, t - 1), -w, self.get(w, t - 2), -2 * w)
        else:
            out = self._combine(self.get(w, t + 1), w, self.get(w, t + 2), 2 * w)
        self.cache[key] = out
        return out

    @staticmethod
    def _combine(near, e1, far, e2):
        res = []
        for x, y in zip(near, far):
            acc: Poly = {}
            for e, c in x.items():
                for ee in (e + e1 + 2, e + e1 - 2):
                    acc[ee] = acc.get(ee, 0) - c
            for e, c in y.items():
                acc[e + e2] = acc.get(e + e2, 0) - c
            res.append({e: c for e, c in acc.items() if c})
        return tuple(res)


def reduce(x: SkeinElement, m: SeifertData, table: R5CoefficientTable = DEFAULT_R5_TABLE,
           record_trace: bool = True, policy: str = "offsets-first",
           deadline: Optional[float] = None) -> Tuple[SkeinElement, ReductionTrace]:
    """Rewrite x into a combination of terminal generators.

    The term of largest key is rewritten first; a term is never produced
    again once popped, because every rule strictly lowers the key. A
    meridian step moves one coset offset straight into the window {0, 1}.
    ``deadline`` is a ``time.monotonic()`` value after which BudgetExceeded is raised.
    """
    if not is_normalized(m):
        raise HypothesisNotMet(f"{m} is not normalized; call normalize first")
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    keyer = _Keyer(m)
    limits = terminal_bounds(m)
    offsets = [_OffsetTable() for _ in range(3)]
    trace = ReductionTrace(record=record_trace)
    pending: Dict[GeneratorIndex, Poly] = {}
    heap: List[Tuple[Tuple[int, int, int], GeneratorIndex]] = []
    done: Dict[GeneratorIndex, Poly] = {}

    def add(v: GeneratorIndex, poly: Poly, coeff: Poly) -> None:
        target = pending.get(v)
        if target is None:
            target = pending[v] = {}
            k = keyer.key(v)
            heapq.heappush(heap, ((-k[0], -k[1], -k[2]), v))
        for s, a in coeff.items():
            for e, c in poly.items():
                ee = e + s
                nv = target.get(ee, 0) + a * c
                if nv:
                    target[ee] = nv
                else:
                    del target[ee]

    for v, c in x.terms.items():
        add(keyer.canon(v), dict(c.terms), {0: 1})

    steps = 0
    while heap:
        steps += 1
        if deadline is not None and steps % 256 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded(f"reduction stopped after {steps} steps, {len(heap)} terms pending")
        negkey, v = heapq.heappop(heap)
        poly = pending.pop(v)
        if not poly:
            continue
        rule, arg = _choose_rule(v, m, limits, policy)
        if rule == "terminal":
            done[v] = poly
            continue
        if rule == "meridian":
            p, q = m.slopes[arg - 1]
            k, l = v[2 * arg - 2], v[2 * arg - 1]
            t = k // p
            a_t, b_t = offsets[arg - 1].get(q * k - p * l, t)
            terms = []
            for s, coeff in ((0, a_t), (1, b_t)):
                u = list(v)
                u[2 * arg - 2] = k - (t - s) * p
                u[2 * arg - 1] = l - (t - s) * q
                terms.append((coeff, tuple(u)))
        else:
            rel = _fiber_rewrite(v, arg) if rule == "fiber" else _r5_rewrite(v, table)
            terms = [({e: sign} if not dlt else {e + 2: -sign, e - 2: -sign}, u)
                     for sign, e, dlt, u in rel]
        hk = (-negkey[0], -negkey[1], -negkey[2])
        outs = []
        for coeff, u in terms:
            cu = keyer.canon(u)
            if keyer.key(cu) >= hk:
                raise DescentViolation(f"{rule} on {v} emitted {cu} with key {keyer.key(cu)} >= {hk}")
            outs.append(cu)
            if coeff:
                add(cu, poly, coeff)
        trace.add(rule if rule != "fiber" else f"fiber{arg}", v, tuple(outs))

    out = SkeinElement()
    for v, poly in done.items():
        if poly:
            out.terms[v] = LaurentPoly(poly)
    return out, trace


def reduce_index(v: Iterable[int], m: SeifertData, **kwargs) -> Tuple[SkeinElement, ReductionTrace]:
    return reduce(SkeinElement.generator(v, m), m, **kwargs)


# ----------------------------------------------------------------------------
# terminal generating set
# ----------------------------------------------------------------------------

def _coset_pairs(p: int, q: int, w: int) -> List[Tuple[int, int]]:
    """The two window representatives (offsets 0 and 1) of {(k,l): qk - pl = w}."""
    k0 = next(k for k in range(p) if (q * k - w) % p == 0)
    l0 = (q * k0 - w) // p
    return [(k0, l0), (k0 + p, l0 + q)]


def generating_set(m: SeifertData) -> List[GeneratorIndex]:
    """All terminal indices: w1 < 2|q1|+2p1, w2 <= p2, w3 <= p3 and offsets in {0, 1}."""
    if not is_normalized(m):
        raise HypothesisNotMet(f"{m} is not normalized; call normalize first")
    t1, t2, t3 = terminal_bounds(m)
    per_torus = []
    for (p, q), top in zip(m.slopes, (t1 - 1, t2, t3)):
        pairs = []
        for w in range(top + 1):
            pairs.extend(_coset_pairs(p, q, w))
        per_torus.append(pairs)
    return sorted(a + b + c for a in per_torus[0] for b in per_torus[1] for c in per_torus[2])


def generating_set_size(m: SeifertData) -> int:
    """len(generating_set(m)) without materializing the set."""
    if not is_normalized(m):
        raise HypothesisNotMet(f"{m} is not normalized; call normalize first")
    size = 1
    for (p, q), top in zip(m.slopes, _tops(m)):
        size *= sum(len(_coset_pairs(p, q, w)) for w in range(top + 1))
    return size


def _tops(m: SeifertData) -> Tuple[int, int, int]:
    t1, t2, t3 = terminal_bounds(m)
    return t1 - 1, t2, t3


__all__ = [
    "Complexity", "DEFAULT_R5_TABLE", "POLICIES", "GeneratorIndex", "R5CoefficientTable", "ReductionTrace",
    "SkeinElement", "TraceStep", "canonical_index", "complexity", "coset_offsets", "descent_key",
    "fiber_relation_from_products", "generating_set", "generating_set_size", "is_terminal", "normalize", "reduce", "reduce_index", "rule_fiber",
    "rule_meridian", "rule_r5", "terminal_bounds", "w_values",
]
