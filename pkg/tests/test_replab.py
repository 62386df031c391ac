from __future__ import annotations

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seifert_skein.characters import AngleIndex, enumerate_characters
from seifert_skein.errors import IllConditioned, InconsistentSpec, NotRealizable
from seifert_skein.homology import h1_order, sweep_instances
from seifert_skein.replab import (
    I_Q, J_Q, ONE_Q, Quaternion, admissible_angle, build_rp2_rep, build_su2_s2base, certify,
    cocycle_dims, construct_sl2_rep, extend_product, rp2_trace_interval, rp2_trace_samples,
    s2base_residuals, sz_construct, sz_realizable,
)
from seifert_skein.seifert import GeneralSeifertData, SeifertData

PI = math.pi
unit = st.floats(-1, 1)


@st.composite
def quaternions(draw):
    q = Quaternion(*(draw(unit) for _ in range(4)))
    n = q.norm()
    if n < 1e-3:
        return ONE_Q
    return Quaternion(q.a / n, q.b / n, q.c / n, q.d / n)


@given(quaternions(), quaternions(), quaternions())
def test_quaternion_algebra(x, y, z):
    assert ((x * y) * z).distance(x * (y * z)) < 1e-12
    assert (x * x.inverse()).distance(ONE_Q) < 1e-12
    assert np.allclose((x * y).to_matrix(), x.to_matrix() @ y.to_matrix())
    assert abs(x.trace - np.trace(x.to_matrix()).real) < 1e-12
    s = x.sqrt()
    assert (s * s).distance(x) < 1e-9


def test_hamilton_units():
    assert (I_Q * J_Q).distance(Quaternion(0, 0, 0, 1)) == 0
    assert (I_Q * I_Q).distance(-ONE_Q) == 0
    assert (-ONE_Q).sqrt().distance(I_Q) < 1e-15


def test_sz_realizable_examples():
    assert sz_realizable(PI / 2, PI / 2, PI / 2)
    assert not sz_realizable(PI / 4, PI / 4, PI)
    for t in np.linspace(0, PI, 7):
        assert sz_realizable(t, t, 0.0)


def test_sz_construct_examples():
    A, B = sz_construct(PI / 2, PI / 2, PI / 2)
    assert A.distance(I_Q) < 1e-15
    assert abs((A * B).angle - PI / 2) < 1e-12
    A, B = sz_construct(PI / 3, PI / 3, 2 * PI / 3)
    assert A.distance(B) < 1e-7
    assert abs((A * B).angle - 2 * PI / 3) < 1e-10
    with pytest.raises(NotRealizable):
        sz_construct(PI / 4, PI / 4, PI)


def test_sz_construct_random_triples():
    rng = random.Random(0)
    n = 0
    while n < 10_000:
        t1, t2, t3 = (rng.uniform(0, PI) for _ in range(3))
        if not sz_realizable(t1, t2, t3):
            continue
        n += 1
        A, B = sz_construct(t1, t2, t3)
        assert abs((A * B).angle - t3) < 1e-10
        assert abs(A.angle - t1) < 1e-12 and abs(B.angle - t2) < 1e-12


@settings(max_examples=200)
@given(quaternions(), st.floats(0.2, 2.9), st.floats(0.0, 1.0))
def test_extend_product(x, t2, frac):
    lo, hi = abs(x.angle - t2), min(x.angle + t2, 2 * PI - x.angle - t2)
    if hi < lo or x.angle < 1e-3 or x.angle > PI - 1e-3:
        return
    t3 = lo + frac * (hi - lo)
    B = extend_product(x, t2, t3)
    assert abs(B.angle - t2) < 1e-9
    assert abs((x * B).angle - t3) < 1e-7


def test_admissible_angle():
    for p in range(2, 12):
        for q in range(-p, p + 1):
            if math.gcd(p, abs(q)) != 1:
                continue
            t = admissible_angle(p, q)
            k = round(t * p / PI)
            assert (k - q) % 2 == 0
            assert PI / 4 - 1e-12 <= t <= 2 * PI / 3 + 1e-12


def test_su2_s2base_examples():
    m = GeneralSeifertData("S2", ((2, 1), (2, 1), (2, 1), (2, -1)))
    reps = build_su2_s2base(m, [5 * PI / 12])
    assert max(s2base_residuals(m, reps, [5 * PI / 12]).values()) < 1e-9
    other = build_su2_s2base(m, [PI / 2])
    assert abs((reps[0] * reps[1]).trace - (other[0] * other[1]).trace) > 0.1
    with pytest.raises(ValueError):
        build_su2_s2base(GeneralSeifertData("S2", ((2, 1), (3, 1), (5, 1))), [])
    six = GeneralSeifertData("S2", ((2, 1), (3, 1), (5, 2), (7, 3), (3, -1), (4, 1)))
    angles = [5 * PI / 12, 0.45 * PI, PI / 2]
    assert max(s2base_residuals(six, build_su2_s2base(six, angles), angles).values()) < 1e-9


def test_rp2_examples():
    m = GeneralSeifertData("RP2", ((3, 1), (5, 2)))
    rep = build_rp2_rep(m, [I_Q, J_Q])
    assert max(rep.residuals(m).values()) < 1e-9
    lo, hi = rp2_trace_interval(m)
    samples = rp2_trace_samples(m, 100)
    assert len({round(float(s), 12) for s in samples}) >= 100
    assert ((samples >= lo - 1e-12) & (samples <= hi + 1e-12)).all()
    assert samples.min() == pytest.approx(lo) or samples.max() == pytest.approx(hi)
    same = build_rp2_rep(m, [I_Q, I_Q])
    assert (same.c[0] * same.c[1]).trace == pytest.approx(2 * math.cos(PI / 3 + 2 * PI / 5))


def test_construct_sl2_examples(sigma235, m333):
    rep = construct_sl2_rep(sigma235, ("irreducible", -1, (AngleIndex(1, 2), AngleIndex(1, 3), AngleIndex(1, 5))))
    assert rep.residual(sigma235) < 1e-9 and rep.det_error() < 1e-12
    ex = construct_sl2_rep(m333, ("exceptional", (0, 1, 1, 1), 3))
    assert ex.residual(m333) < 1e-12
    central = construct_sl2_rep(sigma235, ("central", 1))
    assert np.allclose(central.stack(), np.eye(2))
    with pytest.raises(InconsistentSpec):
        construct_sl2_rep(m333, ("exceptional", (0, 0, 1, 2), 3))
    with pytest.raises(InconsistentSpec):
        construct_sl2_rep(sigma235, ("irreducible", 1, (AngleIndex(1, 2), AngleIndex(1, 3), AngleIndex(1, 5))))


def test_cocycle_examples(sigma235, m333):
    central = cocycle_dims(construct_sl2_rep(sigma235, ("central", 1)), sigma235)
    assert central.dim_H1 == 0
    irr = construct_sl2_rep(sigma235, ("irreducible", -1, (AngleIndex(1, 2), AngleIndex(1, 3), AngleIndex(1, 5))))
    r = cocycle_dims(irr, sigma235)
    assert (r.dim_Z1, r.dim_B1, r.dim_H1) == (3, 3, 0)
    ex = cocycle_dims(construct_sl2_rep(m333, ("exceptional", (0, 1, 1, 1), 3)), m333)
    assert (ex.dim_Z1, ex.dim_B1, ex.dim_H1) == (4, 2, 2)


def test_rank_gap_detection(sigma235, monkeypatch):
    from seifert_skein import replab

    rank, gap = replab._ranks(np.diag([1.0, 1e-7, 1e-9])[None])
    assert rank[0] == 2 and gap[0] == pytest.approx(100)
    rank, gap = replab._ranks(np.zeros((1, 3, 3)) + 1e-17)
    assert rank[0] == 0

    def blurred(mats, m):
        out = np.zeros((mats.shape[0], 21, 12))
        out[:, :12, :12] = np.diag([1.0] * 10 + [1e-7, 1e-9])
        return out

    monkeypatch.setattr(replab, "cocycle_matrix", blurred)
    with pytest.raises(IllConditioned):
        cocycle_dims(construct_sl2_rep(sigma235, ("central", 1)), sigma235)


def test_certify_small_sweep():
    for m in sweep_instances(4):
        if h1_order(m) <= 60:
            res = certify(m)
            assert res.ok, (m, [res.kinds[i] for i in res.failures])


def test_certify_333(m333):
    res = certify(m333)
    assert res.ok
    ex = [h for k, h in zip(res.kinds, res.dim_H1) if k == "exceptional-abelian"]
    assert ex == [2]
    assert len(res.kinds) == len(enumerate_characters(m333))
