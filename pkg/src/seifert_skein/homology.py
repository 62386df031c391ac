"""H_1, abelian characters and exceptional characters of M(q1/p1, q2/p2, q3/p3).

Every count has two independent routes: the closed gcd formulas, and an
enumeration of Hom(H_1, C*) built from a Smith normal form that keeps
track of where the generators h, c1, c2, c3 go.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import EulerZero, GroupTooLarge
from .seifert import SeifertData

Matrix = List[List[int]]

ORACLE_BOUND = 10**6


# ----------------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------------

def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_form(P: Sequence[Sequence[int]]) -> Tuple[List[int], Matrix, Matrix]:
    """Return ``(diag, U, V)`` with ``U @ P @ V`` diagonal, diag[i] | diag[i+1].

    ``U`` and ``V`` are unimodular. Zeros (infinite cyclic factors) come last.
    """
    a = [list(map(int, row)) for row in P]
    n, m = len(a), len(a[0])
    U, V = _identity(n), _identity(m)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        ra, rs = a[dst], a[src]
        for c in range(m):
            ra[c] += k * rs[c]
        ua, us = U[dst], U[src]
        for c in range(n):
            ua[c] += k * us[c]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(n, m)):
        while True:
            pivot = None
            for i in range(t, n):
                for j in range(t, m):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            d = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // d))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, m):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // d))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if a[i][j] % d), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    diag = [abs(a[i][i]) for i in range(min(n, m))]
    return diag, U, V


@dataclass
class AbelianGroupData:
    """``H = (+) Z/d_j`` together with the images of h, c1, c2, c3."""

    snf_diagonal: List[int]
    generator_images: Dict[str, Tuple[int, ...]]

    @property
    def order(self) -> int:
        """|H|, or 0 when H is infinite."""
        if 0 in self.snf_diagonal:
            return 0
        return math.prod(self.snf_diagonal)


def presentation_matrix(m: SeifertData) -> Matrix:
    """Abelianized relations in the generators (h, c1, c2), c3 eliminated."""
    (p1, q1), (p2, q2), (p3, q3) = m.slopes
    return [[q1, p1, 0], [q2, 0, p2], [q3, -p3, -p3]]


def smith_normal_form(P: Sequence[Sequence[int]]) -> AbelianGroupData:
    """SNF of a presentation matrix whose columns are the generators h, c1, c2."""
    if any(len(r) != 3 for r in P):
        raise ValueError("presentation rows must have length 3")
    diag, _, V = smith_form(P)
    imgs = {}
    for name, k in (("h", 0), ("c1", 1), ("c2", 2)):
        imgs[name] = tuple(V[k][j] % d if d else V[k][j] for j, d in enumerate(diag))
    imgs["c3"] = tuple((-x - y) % d if d else -x - y
                       for x, y, d in zip(imgs["c1"], imgs["c2"], diag))
    return AbelianGroupData(diag, imgs)


def gcd_of_maximal_minors(P: Sequence[Sequence[int]]) -> int:
    """gcd of all 3x3 minors of an n x 3 integer matrix (n >= 3)."""
    g = 0
    for r in itertools.combinations(P, 3):
        (a, b, c), (d, e, f), (g2, h, i) = r
        det = a * (e * i - f * h) - b * (d * i - f * g2) + c * (d * h - e * g2)
        g = math.gcd(g, det)
    return g


# ----------------------------------------------------------------------------
# closed formulas
# ----------------------------------------------------------------------------

def _signed_h1(m: SeifertData) -> int:
    (p1, q1), (p2, q2), (p3, q3) = m.slopes
    return p1 * p2 * q3 + p1 * q2 * p3 + q1 * p2 * p3


def h1_order(m: SeifertData) -> int:
    """|H_1(M)| = |p1 p2 q3 + p1 q2 p3 + q1 p2 p3|; 0 signals infinite H_1."""
    return abs(_signed_h1(m))


def h1_mod2_order(m: SeifertData) -> int:
    n = h1_order(m)
    if n == 0:
        raise EulerZero(str(m))
    p1, p2, p3 = m.p
    if p1 % 2 == 0 and p2 % 2 == 0 and p3 % 2 == 0:
        return 4
    return 2 if n % 2 == 0 else 1


def abelian_count(m: SeifertData) -> int:
    return (h1_order(m) + h1_mod2_order(m)) // 2


def _m_values(m: SeifertData) -> Tuple[int, Tuple[int, int, int]]:
    p, q = m.p, m.q
    n = h1_order(m)
    mm = reduce(math.gcd, (n, 2 * p[0] * p[1], 2 * p[0] * p[2], 2 * p[1] * p[2]))
    ms = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        ms.append(reduce(math.gcd, (mm, 4 * p[j], 4 * p[k], 2 * q[i] * p[j], 2 * q[i] * p[k],
                                    2 * (p[j] * q[k] + q[j] * p[k]))))
    return mm, tuple(ms)


def exceptional_count(m: SeifertData) -> int:
    """x_M = (m - m1 - m2 - m3)/2 + |H_1(M, Z/2)|."""
    t = h1_mod2_order(m)
    mm, ms = _m_values(m)
    twice = mm - sum(ms) + 2 * t
    assert twice % 2 == 0 and twice >= 0, (m, mm, ms, t)
    return twice // 2


def weakly_coprime(p1: int, p2: int, p3: int) -> bool:
    ps = (p1, p2, p3)
    return any(all(math.gcd(ps[i], ps[j]) == 1 for j in range(3) if j != i) for i in range(3))


def nonreduced_witness(p1: int, p2: int, p3: int) -> Optional[Tuple[int, int, int]]:
    """First ``(k, d, s)`` with d = gcd(p_i, p_j) > 2, s = gcd(p_i p_j / d, p_k) > 2 and
    (d, s) != (4, 4); ``k`` is the 1-based index of the fiber left out of the pair."""
    ps = (p1, p2, p3)
    for k in range(3):
        i, j = [x for x in range(3) if x != k]
        d = math.gcd(ps[i], ps[j])
        s = math.gcd(ps[i] * ps[j] // d, ps[k])
        if d > 2 and s > 2 and (d != 4 or s != 4):
            return k + 1, d, s
    return None


def h_generates_h1(m: SeifertData) -> bool:
    """|H_1 / <h>| = gcd(p1p2q3 + p1p3q2 + p2p3q1, p1p2, p1p3, p2p3) == 1."""
    p1, p2, p3 = m.p
    return reduce(math.gcd, (_signed_h1(m), p1 * p2, p1 * p3, p2 * p3)) == 1


@dataclass
class CharacterCounts:
    h1_order: int
    h1_mod2_order: int
    abelian_count: int
    exceptional_count: int
    m: int
    m_i: Tuple[int, int, int]
    weakly_coprime: bool
    h_generates: bool

    @property
    def delta(self) -> int:
        return self.abelian_count % 2

    def to_json(self) -> dict:
        return {
            "h1_order": self.h1_order,
            "h1_mod2": self.h1_mod2_order,
            "abelian_count": self.abelian_count,
            "x_M": self.exceptional_count,
            "m": self.m,
            "m_i": list(self.m_i),
            "weakly_coprime": self.weakly_coprime,
            "h_generates": self.h_generates,
        }


def character_counts(m: SeifertData) -> CharacterCounts:
    mm, ms = _m_values(m)
    return CharacterCounts(
        h1_order=h1_order(m),
        h1_mod2_order=h1_mod2_order(m),
        abelian_count=abelian_count(m),
        exceptional_count=exceptional_count(m),
        m=mm,
        m_i=ms,
        weakly_coprime=weakly_coprime(*m.p),
        h_generates=h_generates_h1(m),
    )


# ----------------------------------------------------------------------------
# enumeration oracles
# ----------------------------------------------------------------------------

def mod2_rank(P: Sequence[Sequence[int]]) -> int:
    rows = [[x & 1 for x in r] for r in P]
    rank, ncols = 0, len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def h1_mod2_order_oracle(m: SeifertData) -> int:
    return 2 ** (3 - mod2_rank(presentation_matrix(m)))


def dual_group_values(grp: AbelianGroupData, bound: int = ORACLE_BOUND) -> Tuple[int, np.ndarray]:
    """Evaluate every character of H on h, c1, c2, c3.

    Returns ``(L, vals)`` where ``vals[n, g]`` is phi_n(g) as an integer mod L,
    i.e. phi_n(g) = exp(2 pi i vals[n, g] / L). Row 0 is the trivial character.
    """
    diag = grp.snf_diagonal
    if 0 in diag:
        raise EulerZero("H_1 is infinite")
    order = math.prod(diag)
    if order > bound:
        raise GroupTooLarge(f"|H_1| = {order} exceeds the enumeration bound {bound}")
    L = reduce(lambda x, y: x * y // math.gcd(x, y), diag, 1)
    idx = [j for j, d in enumerate(diag) if d > 1]
    grids = np.meshgrid(*[np.arange(diag[j], dtype=np.int64) for j in idx], indexing="ij")
    a = np.stack([g.ravel() for g in grids], axis=1) if idx else np.zeros((1, 0), dtype=np.int64)
    weights = np.array([[grp.generator_images[g][j] * (L // diag[j]) for g in ("h", "c1", "c2", "c3")]
                        for j in idx], dtype=np.int64).reshape(len(idx), 4)
    vals = (a @ weights) % L
    return L, vals


def abelian_count_oracle(m: SeifertData, bound: int = ORACLE_BOUND) -> int:
    """Count orbits of Hom(H_1, C*) under phi -> phi^-1 by direct enumeration."""
    grp = smith_normal_form(presentation_matrix(m))
    L, vals = dual_group_values(grp, bound)
    fixed = int(np.all((2 * vals) % L == 0, axis=1).sum())
    return (len(vals) + fixed) // 2


def exceptional_count_oracle(m: SeifertData, bound: int = ORACLE_BOUND) -> int:
    """Half the number of phi with phi(h) = +-1 and phi(c_i) != +-1 for i = 1, 2, 3."""
    grp = smith_normal_form(presentation_matrix(m))
    L, vals = dual_group_values(grp, bound)
    two = (2 * vals) % L
    mask = (two[:, 0] == 0) & np.all(two[:, 1:] != 0, axis=1)
    n = int(mask.sum())
    assert n % 2 == 0
    return n // 2


def h_generates_h1_oracle(m: SeifertData) -> bool:
    """SNF of the presentation of H_1 / <h>."""
    Q = presentation_matrix(m) + [[1, 0, 0]]
    diag, _, _ = smith_form(Q)
    return math.prod(diag) == 1


@dataclass
class OracleCounts:
    h1_snf: int
    h1_mod2: int
    abelian: int
    exceptional: int


def batch_oracle_counts(instances: Iterable[SeifertData]) -> Dict[SeifertData, OracleCounts]:
    """Enumeration oracles for many manifolds at once.

    Instances sharing an SNF diagonal share one character grid, so the
    enumeration is a single integer matrix product per group.
    """
    groups: Dict[Tuple[int, ...], List[Tuple[SeifertData, AbelianGroupData]]] = {}
    out: Dict[SeifertData, OracleCounts] = {}
    for m in instances:
        P = presentation_matrix(m)
        grp = smith_normal_form(P)
        groups.setdefault(tuple(grp.snf_diagonal), []).append((m, grp))
        out[m] = OracleCounts(grp.order, 2 ** (3 - mod2_rank(P)), -1, -1)
    for diag, members in groups.items():
        if 0 in diag:
            continue
        L = reduce(lambda x, y: x * y // math.gcd(x, y), diag, 1)
        idx = [j for j, d in enumerate(diag) if d > 1]
        grids = np.meshgrid(*[np.arange(diag[j], dtype=np.int64) for j in idx], indexing="ij")
        a = np.stack([g.ravel() for g in grids], axis=1) if idx else np.zeros((1, 0), dtype=np.int64)
        W = np.zeros((len(idx), 4 * len(members)), dtype=np.int64)
        for col, (_, grp) in enumerate(members):
            for gi, g in enumerate(("h", "c1", "c2", "c3")):
                for r, j in enumerate(idx):
                    W[r, 4 * col + gi] = grp.generator_images[g][j] * (L // diag[j])
        two = ((a @ W) * 2 % L).reshape(len(a), len(members), 4) == 0
        fixed = two.all(axis=2).sum(axis=0)
        exc = (two[:, :, 0] & ~two[:, :, 1] & ~two[:, :, 2] & ~two[:, :, 3]).sum(axis=0)
        for col, (m, _) in enumerate(members):
            out[m].abelian = (len(a) + int(fixed[col])) // 2
            out[m].exceptional = int(exc[col]) // 2
    return out


def sweep_instances(pmax: int, qmax: Optional[int] = None, require_nonzero_euler: bool = True
                    ) -> List[SeifertData]:
    """All ordered triples with p_i <= pmax, |q_i| <= p_i (or qmax), gcd(p_i, q_i) = 1."""
    pairs = [(p, q) for p in range(1, pmax + 1)
             for q in range(-(qmax if qmax is not None else p), (qmax if qmax is not None else p) + 1)
             if math.gcd(p, abs(q)) == 1]
    out = []
    for s in itertools.product(pairs, repeat=3):
        m = SeifertData(s)
        if require_nonzero_euler and _signed_h1(m) == 0:
            continue
        out.append(m)
    return out
