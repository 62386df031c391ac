"""SU(2) and SL2(C) representations of Seifert fibered spaces, and H^1(M; Ad rho).

Quaternions model SU(2); angles are those of the conjugate diagonal matrix
diag(e^{i theta}, e^{-i theta}). Cocycle spaces are computed by folding
the presentation relators with eps(xy) = eps(x) + Ad(x) eps(y), batched over
many representations at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .characters import AngleIndex, CharacterRecord, CharacterTable, enumerate_characters
from .errors import IllConditioned, InconsistentSpec, NoAdmissibleAngle, NotRealizable
from .seifert import GeneralSeifertData, SeifertData, presentation

RANK_RTOL = 1e-8
GAP_FACTOR = 1e3
ANGLE_TOL = 1e-12


# ----------------------------------------------------------------------------
# quaternions
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @classmethod
    def rotation(cls, theta: float, axis: "Quaternion") -> "Quaternion":
        """cos(theta) + sin(theta) * axis for a purely imaginary unit axis."""
        s = math.sin(theta)
        return cls(math.cos(theta), s * axis.b, s * axis.c, s * axis.d)

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> float:
        return math.sqrt(self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2)

    def inverse(self) -> "Quaternion":
        n2 = self.norm() ** 2
        q = self.conj()
        return Quaternion(q.a / n2, q.b / n2, q.c / n2, q.d / n2)

    def is_unit(self, tol: float = 1e-12) -> bool:
        return abs(self.norm() ** 2 - 1.0) < tol

    @property
    def angle(self) -> float:
        return math.acos(max(-1.0, min(1.0, self.a)))

    @property
    def trace(self) -> float:
        return 2.0 * self.a

    def axis(self) -> "Quaternion":
        """Unit imaginary axis; i when the element is +-1."""
        n = math.sqrt(self.b ** 2 + self.c ** 2 + self.d ** 2)
        if n < 1e-15:
            return I_Q
        return Quaternion(0.0, self.b / n, self.c / n, self.d / n)

    def power(self, n: int) -> "Quaternion":
        return Quaternion.rotation(n * self.angle, self.axis())

    def sqrt(self) -> "Quaternion":
        """Half-angle square root; the axis is i when the element is -1."""
        return Quaternion.rotation(self.angle / 2.0, self.axis())

    def distance(self, o: "Quaternion") -> float:
        return math.sqrt((self.a - o.a) ** 2 + (self.b - o.b) ** 2 + (self.c - o.c) ** 2
                         + (self.d - o.d) ** 2)

    def to_matrix(self) -> np.ndarray:
        return np.array([[complex(self.a, self.b), complex(self.c, self.d)],
                         [complex(-self.c, self.d), complex(self.a, -self.b)]])

    def to_json(self) -> list:
        return [self.a, self.b, self.c, self.d]


ONE_Q = Quaternion(1.0)
I_Q = Quaternion(0.0, 1.0)
J_Q = Quaternion(0.0, 0.0, 1.0)
K_Q = Quaternion(0.0, 0.0, 0.0, 1.0)


def _rotation_taking_i_to(axis: Quaternion) -> Quaternion:
    """Unit R with R i R^-1 = axis."""
    # rotate by the angle between i and axis about i x axis
    x, y, z = axis.b, axis.c, axis.d
    if x > 1 - 1e-15:
        return ONE_Q
    if x < -1 + 1e-15:
        return J_Q  # j i j^-1 = -i
    cross = Quaternion(0.0, 0.0, -z, y)
    half = math.acos(max(-1.0, min(1.0, x))) / 2.0
    return Quaternion.rotation(half, cross.axis())


# ----------------------------------------------------------------------------
# realizing angle triples
# ----------------------------------------------------------------------------

def sz_realizable(t1: float, t2: float, t3: float, tol: float = 1e-12) -> bool:
    """|t1 - t2| <= t3 <= min(t1 + t2, 2 pi - t1 - t2)."""
    for t in (t1, t2, t3):
        if not (-tol <= t <= math.pi + tol):
            raise ValueError(f"angle {t} outside [0, pi]")
    return abs(t1 - t2) - tol <= t3 <= min(t1 + t2, 2 * math.pi - t1 - t2) + tol


def sz_construct(t1: float, t2: float, t3: float) -> Tuple[Quaternion, Quaternion]:
    """A of angle t1 along i and B of angle t2 in the i,j-plane with AB of angle t3."""
    if not sz_realizable(t1, t2, t3):
        raise NotRealizable(f"angles ({t1}, {t2}, {t3}) violate the triangle condition")
    s = math.sin(t1) * math.sin(t2)
    if abs(s) < 1e-15:
        phi = 0.0
    else:
        cphi = (math.cos(t1) * math.cos(t2) - math.cos(t3)) / s
        if abs(cphi) > 1 + 1e-9:
            raise NotRealizable(f"cos(phi) = {cphi} for angles ({t1}, {t2}, {t3})")
        phi = math.acos(max(-1.0, min(1.0, cphi)))
    A = Quaternion.rotation(t1, I_Q)
    B = Quaternion.rotation(t2, Quaternion(0.0, math.cos(phi), math.sin(phi), 0.0))
    err = abs((A * B).angle - t3)
    if err > 1e-10 and abs(s) >= 1e-15:
        raise NotRealizable(f"constructed angle misses target by {err}")
    return A, B


def extend_product(X: Quaternion, t2: float, t3: float) -> Quaternion:
    """B of angle t2 such that X B has angle t3, for any unit X."""
    _, B = sz_construct(X.angle, t2, t3)
    R = _rotation_taking_i_to(X.axis())
    return R * B * R.inverse()


def admissible_angle(p: int, q: int) -> float:
    """pi k/p with k = q mod 2, inside [pi/4, 2 pi/3], closest to pi/2."""
    best = None
    for k in range(0, p + 1):
        if (k - q) % 2:
            continue
        theta = math.pi * k / p
        if math.pi / 4 - 1e-12 <= theta <= 2 * math.pi / 3 + 1e-12:
            if best is None or abs(theta - math.pi / 2) < abs(best - math.pi / 2):
                best = theta
    if best is None:
        raise NoAdmissibleAngle(f"no admissible angle for fiber {q}/{p}")
    return best


def build_su2_s2base(m: GeneralSeifertData, angles: Sequence[float]) -> List[Quaternion]:
    """rho(c_1..c_n) with rho(h) = -1 and rho(c_1...c_i) of angle angles[i-2] for 2 <= i <= n-2."""
    if m.base != "S2":
        raise ValueError("base must be S2")
    n = len(m.slopes)
    if n < 4:
        raise ValueError(f"need at least four fibers, got {n}")
    if any(p < 2 for p, _ in m.slopes):
        raise ValueError("every fiber must be exceptional (p >= 2)")
    if len(angles) != n - 3:
        raise ValueError(f"expected {n - 3} partial-product angles")
    lo, hi = 5 * math.pi / 12, math.pi / 2
    if any(not (lo - 1e-12 <= a <= hi + 1e-12) for a in angles):
        raise ValueError("partial-product angles must lie in [5pi/12, pi/2]")
    thetas = [admissible_angle(p, q) for p, q in m.slopes]
    reps = [Quaternion.rotation(thetas[0], I_Q)]
    X = reps[0]
    for i, phi in enumerate(angles, start=1):
        B = extend_product(X, thetas[i], phi)
        reps.append(B)
        X = X * B
    B = extend_product(X, thetas[n - 2], thetas[n - 1])
    reps.append(B)
    X = X * B
    reps.append(X.inverse())
    return reps


def s2base_residuals(m: GeneralSeifertData, reps: Sequence[Quaternion],
                     angles: Sequence[float]) -> dict:
    prod = ONE_Q
    partial = []
    for i, r in enumerate(reps):
        prod = prod * r
        if 1 <= i <= len(reps) - 3:
            partial.append(abs(prod.angle - angles[i - 1]))
    torsion = max(r.power(p).distance(ONE_Q if q % 2 == 0 else -ONE_Q)
                  for r, (p, q) in zip(reps, m.slopes))
    return {"product": prod.distance(ONE_Q), "torsion": torsion,
            "partial_angles": max(partial, default=0.0),
            "unit": max(abs(r.norm() - 1) for r in reps)}


@dataclass
class Rp2Rep:
    c: List[Quaternion]
    a: Quaternion
    h: Quaternion = -ONE_Q

    def residuals(self, m: GeneralSeifertData) -> dict:
        prod = ONE_Q
        for x in self.c:
            prod = prod * x
        rel = prod * self.a * self.a
        conj = self.a * self.h * self.a.inverse() * self.h
        torsion = max((x.power(p) * self.h.power(q)).distance(ONE_Q)
                      for x, (p, q) in zip(self.c, m.slopes))
        return {"product": rel.distance(ONE_Q), "conjugation": conj.distance(ONE_Q),
                "torsion": torsion}


def build_rp2_rep(m: GeneralSeifertData, axes: Sequence[Quaternion]) -> Rp2Rep:
    """rho(c_k) = cos(q_k pi/p_k) + sin(q_k pi/p_k) v_k, rho(h) = -1, rho(a) a square root
    of rho(c_1...c_n)^-1."""
    if m.base != "RP2":
        raise ValueError("base must be RP2")
    if len(m.slopes) < 2 or any(p < 2 for p, _ in m.slopes):
        raise ValueError("need at least two exceptional fibers")
    if len(axes) != len(m.slopes):
        raise ValueError("one axis per fiber is required")
    cs = []
    for (p, q), v in zip(m.slopes, axes):
        if abs(v.a) > 1e-12 or not v.is_unit(1e-9):
            raise ValueError("axes must be purely imaginary unit quaternions")
        cs.append(Quaternion.rotation(q * math.pi / p, v))
    prod = ONE_Q
    for x in cs:
        prod = prod * x
    return Rp2Rep(cs, prod.inverse().sqrt())


def rp2_trace_interval(m: GeneralSeifertData) -> Tuple[float, float]:
    (p1, q1), (p2, q2) = m.slopes[:2]
    x, y = q1 * math.pi / p1, q2 * math.pi / p2
    alpha = 2 * math.cos(x) * math.cos(y)
    beta = 2 * abs(math.sin(x) * math.sin(y))
    return alpha - beta, alpha + beta


def rp2_trace_samples(m: GeneralSeifertData, samples: int = 100) -> np.ndarray:
    """Tr rho(c1 c2) for v1 = i and v2 = cos(t) i + sin(t) j, t evenly spaced in [0, pi]."""
    out = []
    rest = [I_Q] * (len(m.slopes) - 2)
    for t in np.linspace(0.0, math.pi, samples):
        rep = build_rp2_rep(m, [I_Q, Quaternion(0.0, math.cos(t), math.sin(t), 0.0)] + rest)
        out.append((rep.c[0] * rep.c[1]).trace)
    return np.array(out)


# ----------------------------------------------------------------------------
# SL2(C) representations of M(q1/p1, q2/p2, q3/p3)
# ----------------------------------------------------------------------------

GENERATORS = ("h", "c1", "c2", "c3")


@dataclass
class Sl2Rep:
    h: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    c3: np.ndarray

    def stack(self) -> np.ndarray:
        return np.stack([self.h, self.c1, self.c2, self.c3])

    def residual(self, m: SeifertData) -> float:
        return float(relator_residuals(self.stack()[None], m)[0])

    def det_error(self) -> float:
        return max(abs(np.linalg.det(g) - 1) for g in self.stack())


def _word_matrices(mats: np.ndarray, word) -> np.ndarray:
    """Evaluate a relator on a batch (N, 4, 2, 2) of generator images."""
    n = mats.shape[0]
    out = np.broadcast_to(np.eye(2, dtype=complex), (n, 2, 2)).copy()
    for gen, e in word:
        g = mats[:, GENERATORS.index(gen)]
        out = out @ _matrix_power(g, e)
    return out


def _sl2_inverse(g: np.ndarray) -> np.ndarray:
    inv = np.empty_like(g)
    inv[..., 0, 0] = g[..., 1, 1]
    inv[..., 1, 1] = g[..., 0, 0]
    inv[..., 0, 1] = -g[..., 0, 1]
    inv[..., 1, 0] = -g[..., 1, 0]
    return inv


def _matrix_power(g: np.ndarray, e: int) -> np.ndarray:
    if e < 0:
        g, e = _sl2_inverse(g), -e
    return np.linalg.matrix_power(g, e)


def relator_residuals(mats: np.ndarray, m: SeifertData) -> np.ndarray:
    """max over the seven relators of ||rho(w) - I||, per representation."""
    res = np.zeros(mats.shape[0])
    for word in presentation(m):
        w = _word_matrices(mats, word)
        res = np.maximum(res, np.abs(w - np.eye(2)).max(axis=(1, 2)))
    return res


def _diag(z: np.ndarray) -> np.ndarray:
    out = np.zeros(z.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = z
    out[..., 1, 1] = 1 / z
    return out


def diagonal_rep(phi: Sequence[int], modulus: int) -> Sl2Rep:
    """rho(x) = diag(lambda^phi(x), lambda^-phi(x)) with lambda = exp(2 pi i / modulus)."""
    z = np.exp(2j * np.pi * np.asarray(phi, dtype=float) / modulus)
    mats = _diag(z)
    return Sl2Rep(*mats)


def _zeta(a: AngleIndex) -> complex:
    return complex(math.cos(math.pi * a.k / a.n), math.sin(math.pi * a.k / a.n))


def irreducible_rep(h_sign: int, traces: Sequence[AngleIndex]) -> Sl2Rep:
    """rho(h) = h_sign I, rho(c1) diagonal, rho(c2) = [[a, 1], [ad - 1, d]], rho(c3) = (rho(c1) rho(c2))^-1."""
    if h_sign not in (1, -1):
        raise InconsistentSpec("h_sign must be +1 or -1")
    if any(t.is_pm2() for t in traces):
        raise InconsistentSpec("irreducible characters have no c-trace equal to +-2")
    z1 = _zeta(traces[0])
    t2, t3 = traces[1].trace, traces[2].trace
    a = (t3 - t2 / z1) / (z1 - 1 / z1)
    d = t2 - a
    c1 = np.diag([z1, 1 / z1])
    c2 = np.array([[a, 1.0], [a * d - 1.0, d]], dtype=complex)
    c3 = np.linalg.inv(c1 @ c2)
    return Sl2Rep(h_sign * np.eye(2, dtype=complex), c1, c2, c3)


def construct_sl2_rep(m: SeifertData, spec: Tuple, check: bool = True) -> Sl2Rep:
    """Build a representation from ``("central", sign)``, ``("diagonal", phi, L)``,
    ``("exceptional", phi, L)`` or ``("irreducible", h_sign, trace_triple)``.

    ``phi`` lists the values on (h, c1, c2, c3) in Z/L.
    """
    kind = spec[0]
    if kind == "central":
        sign = spec[1]
        if sign not in (1, -1):
            raise InconsistentSpec("central sign must be +-1")
        rep = Sl2Rep(*(np.eye(2, dtype=complex) for _ in range(4)))
        if sign == -1:
            # h -> -I forces c_i^p_i = (-1)^q_i; use c_i = +-I where possible
            cs = []
            for p, q in m.slopes:
                if q % 2 == 0:
                    cs.append(np.eye(2, dtype=complex))
                elif p % 2 == 1:
                    cs.append(-np.eye(2, dtype=complex))
                else:
                    raise InconsistentSpec(f"no central value for c with c^{p} = -I")
            if not np.allclose(cs[0] @ cs[1] @ cs[2], np.eye(2)):
                raise InconsistentSpec("central values violate c1 c2 c3 = 1")
            rep = Sl2Rep(-np.eye(2, dtype=complex), *cs)
    elif kind in ("diagonal", "exceptional"):
        phi, L = spec[1], spec[2]
        rep = diagonal_rep(phi, L)
        if kind == "exceptional":
            h2 = (2 * phi[0]) % L == 0
            if not h2 or any((2 * x) % L == 0 for x in phi[1:]):
                raise InconsistentSpec(f"phi = {phi} mod {L} is not exceptional")
    elif kind == "irreducible":
        rep = irreducible_rep(spec[1], spec[2])
    else:
        raise InconsistentSpec(f"unknown representation kind {kind!r}")
    if check and rep.residual(m) > 1e-9:
        raise InconsistentSpec(f"{spec} does not satisfy the relations of {m}")
    return rep


def rep_for_record(m: SeifertData, r: CharacterRecord, check: bool = True) -> Sl2Rep:
    if r.kind == "irreducible":
        return construct_sl2_rep(m, ("irreducible", 1 if r.h_trace.k == 0 else -1, r.c_traces), check)
    kind = "exceptional" if r.kind == "exceptional-abelian" else "diagonal"
    return construct_sl2_rep(m, (kind, r.phi, r.modulus), check)


def table_reps(table: CharacterTable) -> np.ndarray:
    """Generator images (N, 4, 2, 2) for every record of a character table.

    Relations are not checked here; callers verify them in one batch.
    """
    m = table.slopes
    out = np.empty((len(table.records), 4, 2, 2), dtype=complex)
    ab = [n for n, r in enumerate(table.records) if r.is_abelian]
    if ab:
        phi = np.array([table.records[n].phi for n in ab], dtype=float)
        L = np.array([table.records[n].modulus for n in ab], dtype=float)
        out[ab] = _diag(np.exp(2j * np.pi * phi / L[:, None]))
    for n, r in enumerate(table.records):
        if not r.is_abelian:
            out[n] = rep_for_record(m, r, check=False).stack()
    return out


# ----------------------------------------------------------------------------
# cocycles
# ----------------------------------------------------------------------------

# sl2 basis: [[1,0],[0,-1]], [[0,1],[0,0]], [[0,0],[1,0]]
_SL2_BASIS = np.array([[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]], dtype=complex)


def adjoint(g: np.ndarray) -> np.ndarray:
    """Ad(g) on sl2 in the basis above, batched over leading axes."""
    ginv = _sl2_inverse(g)
    imgs = g[..., None, :, :] @ _SL2_BASIS @ ginv[..., None, :, :]  # (..., 3, 2, 2)
    coords = np.stack([imgs[..., 0, 0], imgs[..., 0, 1], imgs[..., 1, 0]], axis=-1)
    return np.swapaxes(coords, -1, -2)


def _geometric_sum(ad: np.ndarray, e: int) -> np.ndarray:
    out = np.zeros_like(ad)
    term = np.broadcast_to(np.eye(3, dtype=complex), ad.shape).copy()
    for _ in range(e):
        out = out + term
        term = term @ ad
    return out


def cocycle_matrix(mats: np.ndarray, m: SeifertData) -> np.ndarray:
    """Linear map (eps(h), eps(c1), eps(c2), eps(c3)) in C^12 -> values on the seven relators."""
    n = mats.shape[0]
    words = presentation(m)
    out = np.zeros((n, 3 * len(words), 12), dtype=complex)
    ads = adjoint(mats)  # (n, 4, 3, 3)
    for r, word in enumerate(words):
        prefix = np.broadcast_to(np.eye(2, dtype=complex), (n, 2, 2)).copy()
        for gen, e in word:
            gi = GENERATORS.index(gen)
            g = mats[:, gi]
            block = _geometric_sum(ads[:, gi], abs(e))
            if e < 0:
                block = -adjoint(_matrix_power(g, e)) @ block
            out[:, 3 * r:3 * r + 3, 3 * gi:3 * gi + 3] += adjoint(prefix) @ block
            prefix = prefix @ _matrix_power(g, e)
    return out


def coboundary_matrix(mats: np.ndarray) -> np.ndarray:
    """A -> (A - Ad(g) A) for g = h, c1, c2, c3."""
    ads = adjoint(mats)
    return (np.eye(3) - ads).reshape(mats.shape[0], 12, 3)


def _ranks(matrices: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Numerical rank and the singular-value ratio at the cut (inf when there is no cut).

    The threshold is relative to max(sigma_max, 1): an operator built from
    Ad(g) - 1 whose entries are pure rounding noise must count as zero.
    """
    s = np.linalg.svd(matrices, compute_uv=False)
    ref = np.maximum(s[:, :1], 1.0)
    rank = (s > RANK_RTOL * ref).sum(axis=1)
    k = s.shape[1]
    gap = np.full(len(s), np.inf)
    cut = (rank > 0) & (rank < k)
    idx = np.nonzero(cut)[0]
    if len(idx):
        above = s[idx, rank[idx] - 1]
        below = s[idx, rank[idx]]
        gap[idx] = np.where(below > 0, above / np.maximum(below, 1e-300), np.inf)
    return rank, gap


@dataclass(frozen=True)
class CocycleReport:
    dim_Z1: int
    dim_B1: int
    dim_H1: int
    gap: float  # smallest singular-value ratio at a rank cut

    def to_json(self) -> dict:
        return {"dim_Z1": self.dim_Z1, "dim_B1": self.dim_B1, "dim_H1": self.dim_H1,
                "gap": None if math.isinf(self.gap) else self.gap}


@dataclass
class CocycleBatch:
    dim_Z1: np.ndarray
    dim_B1: np.ndarray
    gap: np.ndarray

    @property
    def dim_H1(self) -> np.ndarray:
        return self.dim_Z1 - self.dim_B1

    @property
    def well_conditioned(self) -> np.ndarray:
        return self.gap >= GAP_FACTOR


def cocycle_dims_batch(mats: np.ndarray, m: SeifertData) -> CocycleBatch:
    rz, gz = _ranks(cocycle_matrix(mats, m))
    rb, gb = _ranks(coboundary_matrix(mats))
    return CocycleBatch(12 - rz, rb, np.minimum(gz, gb))


def cocycle_dims(rep: Sl2Rep, m: SeifertData) -> CocycleReport:
    b = cocycle_dims_batch(rep.stack()[None], m)
    gap = float(b.gap[0])
    if gap < GAP_FACTOR:
        raise IllConditioned(f"singular-value gap {gap:.3g} at the rank cut is below {GAP_FACTOR:g}")
    return CocycleReport(int(b.dim_Z1[0]), int(b.dim_B1[0]), int(b.dim_H1[0]), gap)


def expected_h1(kind: str) -> int:
    return 2 if kind == "exceptional-abelian" else 0


@dataclass
class CertificationResult:
    slopes: SeifertData
    kinds: List[str]
    dim_H1: np.ndarray
    gap: np.ndarray
    residual: np.ndarray

    @property
    def failures(self) -> List[int]:
        return [i for i, k in enumerate(self.kinds)
                if self.dim_H1[i] != expected_h1(k) or self.gap[i] < GAP_FACTOR
                or self.residual[i] > 1e-9]

    @property
    def ok(self) -> bool:
        return not self.failures


def certify_table(table: CharacterTable) -> CertificationResult:
    m = table.slopes
    mats = table_reps(table)
    batch = cocycle_dims_batch(mats, m)
    return CertificationResult(m, [r.kind for r in table.records], batch.dim_H1, batch.gap,
                               relator_residuals(mats, m))


def certify(m: SeifertData) -> CertificationResult:
    return certify_table(enumerate_characters(m))
