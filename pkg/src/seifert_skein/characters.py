"""The SL2(C) character variety X(M) of M(q1/p1, q2/p2, q3/p3) when e(M) != 0.

Traces of finite-order elements are 2cos(pi k/n); they are carried as exact
angle indices so that deciding whether two characters agree never goes
through floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import EulerZero, HypothesisNotMet
from .homology import (
    ORACLE_BOUND,
    abelian_count,
    dual_group_values,
    exceptional_count,
    h1_order,
    presentation_matrix,
    smith_normal_form,
    weakly_coprime,
)
from .seifert import SeifertData

RANK_RTOL = 1e-8


@dataclass(frozen=True, order=True)
class AngleIndex:
    """The conjugate pair exp(+-i pi k/n); its trace is 2cos(pi k/n), 0 <= k <= n."""

    k: int
    n: int

    def __post_init__(self):
        g = math.gcd(self.k, self.n)
        object.__setattr__(self, "k", self.k // g)
        object.__setattr__(self, "n", self.n // g)
        if not (self.n > 0 and 0 <= self.k <= self.n):
            raise ValueError(f"bad angle index {self.k}/{self.n}")

    @classmethod
    def from_turn(cls, num: int, den: int) -> "AngleIndex":
        """Trace data of lambda = exp(2 pi i num/den)."""
        k = (2 * num) % (2 * den)
        if k > den:
            k = 2 * den - k
        return cls(k, den)

    @property
    def trace(self) -> float:
        return 2.0 * math.cos(math.pi * self.k / self.n)

    def is_pm2(self) -> bool:
        return self.k in (0, self.n)

    def __str__(self) -> str:
        return f"2cos({self.k}pi/{self.n})"


TWO = AngleIndex(0, 1)
MINUS_TWO = AngleIndex(1, 1)

TraceTriple = Tuple[AngleIndex, AngleIndex, AngleIndex]


@dataclass(frozen=True)
class CharacterRecord:
    kind: str  # central | abelian | exceptional-abelian | irreducible
    h_trace: AngleIndex
    c_traces: TraceTriple
    # abelian kinds: phi(h), phi(c1), phi(c2), phi(c3) as integers mod L
    phi: Optional[Tuple[int, int, int, int]] = None
    modulus: Optional[int] = None

    @property
    def is_abelian(self) -> bool:
        return self.kind != "irreducible"


@dataclass
class CharacterTable:
    slopes: SeifertData
    records: List[CharacterRecord]

    def of_kind(self, *kinds: str) -> List[CharacterRecord]:
        return [r for r in self.records if r.kind in kinds]

    @property
    def abelian(self) -> List[CharacterRecord]:
        return [r for r in self.records if r.is_abelian]

    @property
    def irreducible(self) -> List[CharacterRecord]:
        return self.of_kind("irreducible")

    def __len__(self) -> int:
        return len(self.records)


def trace_sets(p: int) -> Tuple[List[AngleIndex], List[AngleIndex]]:
    """C_p^+ = {z + 1/z : z^p = 1, z != +-1} and C_p^- = {z + 1/z : z^p = -1, z != -1}."""
    if p < 1:
        raise ValueError("p must be positive")
    plus = [AngleIndex(2 * j, p) for j in range(1, p) if 2 * j < p]
    minus = [AngleIndex(2 * j + 1, p) for j in range(p) if 2 * j + 1 < p]
    return plus, minus


def p_plus(p: int) -> int:
    return (p + 1) // 2 - 1


def p_minus(p: int) -> int:
    return p // 2


def _require_nonzero_euler(m: SeifertData) -> None:
    if h1_order(m) == 0:
        raise EulerZero(f"{m} has Euler number 0")


def irreducible_count(m: SeifertData) -> int:
    """|X^irr| = p1+ p2+ p3+ + p1- p2- p3- - x_M."""
    _require_nonzero_euler(m)
    pp = math.prod(p_plus(p) for p in m.p)
    pm = math.prod(p_minus(p) for p in m.p)
    return pp + pm - exceptional_count(m)


def enumerate_characters(m: SeifertData, bound: int = ORACLE_BOUND) -> CharacterTable:
    """List every point of X(M): abelian ones from Hom(H_1, C*) modulo inversion,
    irreducible ones as trace triples in C^{eps1} x C^{eps2} x C^{eps3} that are
    not traces of exceptional abelian characters."""
    _require_nonzero_euler(m)
    grp = smith_normal_form(presentation_matrix(m))
    L, vals = dual_group_values(grp, bound)
    records: List[CharacterRecord] = []
    seen = set()
    for row in vals.tolist():
        key = tuple(row)
        neg = tuple((-x) % L for x in row)
        if min(key, neg) in seen:
            continue
        seen.add(min(key, neg))
        rep = min(key, neg)
        h, c = rep[0], rep[1:]
        h_pm = (2 * h) % L == 0
        c_pm = [(2 * x) % L == 0 for x in c]
        if h_pm and all(c_pm):
            kind = "central"
        elif h_pm and not any(c_pm):
            kind = "exceptional-abelian"
        else:
            kind = "abelian"
        records.append(CharacterRecord(
            kind,
            AngleIndex.from_turn(h, L),
            tuple(AngleIndex.from_turn(x, L) for x in c),
            phi=rep, modulus=L,
        ))
    exceptional = {}
    for r in records:
        if r.kind == "exceptional-abelian":
            exceptional.setdefault(r.h_trace, set()).add(r.c_traces)
    sets = [trace_sets(p) for p in m.p]
    for h_trace in (TWO, MINUS_TWO):
        if h_trace == TWO:
            factors = [s[0] for s in sets]
        else:
            # rho(h) = -I forces rho(c_i)^p_i = (-1)^q_i
            factors = [s[0] if q % 2 == 0 else s[1] for s, q in zip(sets, m.q)]
        target = set(itertools.product(*factors))
        excluded = exceptional.get(h_trace, set())
        missing = excluded - target
        assert not missing, f"exceptional trace triples outside the target set: {missing}"
        for triple in sorted(target - excluded):
            records.append(CharacterRecord("irreducible", h_trace, triple))
    return CharacterTable(m, records)


def is_reduced(m: SeifertData) -> Tuple[bool, int]:
    """``(reduced, x_M)``; the scheme is non-reduced exactly at the x_M exceptional points."""
    _require_nonzero_euler(m)
    x = exceptional_count(m)
    return x == 0, x


@dataclass(frozen=True)
class SkeinDimension:
    value: int
    exact: bool  # False: value is only the lower bound |X(M)|

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


def skein_dimension(m: SeifertData) -> SkeinDimension:
    reduced, _ = is_reduced(m)
    return SkeinDimension(abelian_count(m) + irreducible_count(m), reduced)


# ----------------------------------------------------------------------------
# bases of C[X(M)]
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisDescriptor:
    """``h_factor * tc1^k1 tc2^k2 tc3^k3`` where h_factor is th+2, th-2 or th^i."""

    h_kind: str  # "plus" | "minus" | "power"
    h_power: int = 0
    k: Tuple[int, int, int] = (0, 0, 0)

    def evaluate(self, th: float, tc: Tuple[float, float, float]) -> float:
        if self.h_kind == "plus":
            f = th + 2.0
        elif self.h_kind == "minus":
            f = th - 2.0
        else:
            f = th ** self.h_power
        return f * tc[0] ** self.k[0] * tc[1] ** self.k[1] * tc[2] ** self.k[2]

    def __str__(self) -> str:
        if self.h_kind == "plus":
            head = "(th+2)"
        elif self.h_kind == "minus":
            head = "(th-2)"
        else:
            head = f"th^{self.h_power}"
        if self.h_kind == "power" and self.k == (0, 0, 0):
            return head
        return head + "".join(f"*tc{i}^{k}" for i, k in enumerate(self.k, start=1))


def _check_basis_hypothesis(m: SeifertData) -> None:
    _require_nonzero_euler(m)
    if not weakly_coprime(*m.p):
        raise HypothesisNotMet(f"multiplicities {m.p} are not weakly coprime")


def basis(m: SeifertData) -> List[BasisDescriptor]:
    _check_basis_hypothesis(m)
    pp = [p_plus(p) for p in m.p]
    pm = [p_minus(p) for p in m.p]
    y = abelian_count(m)
    delta = y % 2
    out = [BasisDescriptor("plus", k=k) for k in itertools.product(*[range(n) for n in pp])]
    out += [BasisDescriptor("minus", k=k) for k in itertools.product(*[range(n) for n in pm])]
    out += [BasisDescriptor("power", i) for i in range(2, y + delta)]
    out.append(BasisDescriptor("plus", k=(pp[0], 0, 0)))
    if y % 2 == 0:
        out.append(BasisDescriptor("minus", k=(pm[0], 0, 0)))
    expected = abelian_count(m) + irreducible_count(m)
    if len(out) != expected or len(set(out)) != len(out):
        raise AssertionError(f"basis of {m} has {len(out)} elements (distinct: {len(set(out))}), "
                             f"expected |X(M)| = {expected}")
    return out


def basis_alt(m: SeifertData) -> List[BasisDescriptor]:
    """Basis made of pure trace monomials th^i tc^k, for odd p_i and even y_M."""
    _check_basis_hypothesis(m)
    if any(p % 2 == 0 for p in m.p):
        raise HypothesisNotMet(f"multiplicities {m.p} are not all odd")
    y = abelian_count(m)
    if y % 2:
        raise HypothesisNotMet(f"y_M = {y} is odd")
    pp = [p_plus(p) for p in m.p]
    out = [BasisDescriptor("power", i, k)
           for i in (0, 1) for k in itertools.product(*[range(n) for n in pp])]
    out += [BasisDescriptor("power", i, (pp[0], 0, 0)) for i in (0, 1)]
    out += [BasisDescriptor("power", i) for i in range(2, y)]
    if len(out) != len(basis(m)):
        raise AssertionError(f"alternative basis of {m} has the wrong size {len(out)}")
    return out


def record_traces(r: CharacterRecord) -> Tuple[float, Tuple[float, float, float]]:
    return r.h_trace.trace, tuple(t.trace for t in r.c_traces)


@dataclass
class EvaluationReport:
    matrix: np.ndarray
    singular_values: np.ndarray
    rows: List[CharacterRecord]
    columns: List[BasisDescriptor]

    @property
    def min_singular_value(self) -> float:
        return float(self.singular_values[-1]) if len(self.singular_values) else 0.0

    @property
    def relative_min_singular_value(self) -> float:
        s = self.singular_values
        return float(s[-1] / s[0]) if len(s) and s[0] > 0 else 0.0

    @property
    def rank(self) -> int:
        s = self.singular_values
        if not len(s) or s[0] == 0:
            return 0
        return int((s > RANK_RTOL * s[0]).sum())

    @property
    def nonsingular(self) -> bool:
        n = self.matrix.shape[0]
        return self.matrix.shape == (n, n) and self.rank == n


def _descriptor_columns(cols: List[BasisDescriptor], th, tc, mul, ones, power):
    """Evaluate descriptors column by column with caller-supplied arithmetic."""
    out = []
    cache: Dict[Tuple[int, int], object] = {}

    def pw(j, e):
        key = (j, e)
        if key not in cache:
            base = th if j == 3 else tc[j]
            cache[key] = power(base, e)
        return cache[key]

    for d in cols:
        if d.h_kind == "plus":
            col = th + 2
        elif d.h_kind == "minus":
            col = th - 2
        else:
            col = pw(3, d.h_power) if d.h_power else ones
        for j, e in enumerate(d.k):
            if e:
                col = mul(col, pw(j, e))
        out.append(col)
    return out


def evaluation_matrix(m: SeifertData, alternative: bool = False,
                      table: Optional[CharacterTable] = None) -> EvaluationReport:
    """Basis functions (columns) evaluated on every character (rows)."""
    cols = basis_alt(m) if alternative else basis(m)
    table = table or enumerate_characters(m)
    if len(table) != len(cols):
        raise AssertionError(f"{len(table)} characters but {len(cols)} basis functions")
    th = np.array([r.h_trace.trace for r in table.records])
    tc = [np.array([r.c_traces[j].trace for r in table.records]) for j in range(3)]
    M = np.column_stack(_descriptor_columns(cols, th, tc, np.multiply, np.ones_like(th), np.power))
    s = np.linalg.svd(M, compute_uv=False)
    return EvaluationReport(M, s, table.records, cols)


# ----------------------------------------------------------------------------
# exact rank certificate modulo a prime
# ----------------------------------------------------------------------------

def _find_prime(order: int, start: int) -> int:
    from sympy import isprime

    p = start - (start % order) + 1
    while not isprime(p):
        p += order
    return p


def _rank_mod(M: np.ndarray, P: int) -> int:
    A = M.copy() % P
    n_rows, n_cols = A.shape
    rank = 0
    for c in range(n_cols):
        nz = np.nonzero(A[rank:, c])[0]
        if not len(nz):
            continue
        piv = rank + nz[0]
        A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, c]), P - 2, P)
        A[rank] = (A[rank] * inv) % P
        factors = A[:, c].copy()
        factors[rank] = 0
        A = (A - (factors[:, None] * A[rank][None, :]) % P) % P
        rank += 1
        if rank == n_rows:
            break
    return rank


def exact_rank(m: SeifertData, alternative: bool = False, table: Optional[CharacterTable] = None,
               primes: int = 2) -> int:
    """Rank of the evaluation matrix, computed in F_P for primes P = 1 mod 2N.

    Every trace 2cos(pi k/n) is zeta^k + zeta^-k for a 2n-th root of unity
    zeta, which exists in F_P. Reduction mod P can only lower the rank, so
    full rank mod P certifies nonsingularity over C; the maximum over
    several primes is returned.
    """
    from sympy.ntheory import primitive_root

    cols = basis_alt(m) if alternative else basis(m)
    table = table or enumerate_characters(m)
    N = 1
    for r in table.records:
        for a in (r.h_trace,) + r.c_traces:
            N = N * a.n // math.gcd(N, a.n)
    best = 0
    start = 1 << 30
    for _ in range(primes):
        P = _find_prime(2 * N, start)
        start = P + 1
        g = primitive_root(P)
        zeta = pow(g, (P - 1) // (2 * N), P)

        def trace_mod(a: AngleIndex) -> int:
            z = pow(zeta, (N // a.n) * a.k, P)
            return (z + pow(z, P - 2, P)) % P

        th = np.array([trace_mod(r.h_trace) for r in table.records], dtype=object)
        tc = [np.array([trace_mod(r.c_traces[j]) for r in table.records], dtype=object)
              for j in range(3)]
        cols_mod = _descriptor_columns(
            cols, th, tc,
            lambda x, y: (x * y) % P,
            np.ones(len(th), dtype=object),
            lambda x, e: np.array([pow(int(v), e, P) for v in x], dtype=object),
        )
        M = np.column_stack([np.asarray(c, dtype=object) % P for c in cols_mod]).astype(np.int64)
        best = max(best, _rank_mod(M, P))
        if best == min(M.shape):
            break
    return best
