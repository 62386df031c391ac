from __future__ import annotations

import math

import numpy as np
import pytest

from seifert_skein.characters import (
    AngleIndex, basis, basis_alt, enumerate_characters, evaluation_matrix, exact_rank,
    irreducible_count, is_reduced, p_minus, p_plus, skein_dimension, trace_sets,
)
from seifert_skein.errors import EulerZero, HypothesisNotMet
from seifert_skein.homology import abelian_count, h1_order, sweep_instances, weakly_coprime
from seifert_skein.seifert import SeifertData

S = SeifertData


def test_angle_index():
    a = AngleIndex(2, 4)
    assert (a.k, a.n) == (1, 2)
    assert a.trace == pytest.approx(0.0, abs=1e-15)
    assert AngleIndex.from_turn(1, 3) == AngleIndex(2, 3)
    assert AngleIndex.from_turn(2, 3) == AngleIndex(2, 3)  # inverse pair has the same trace
    assert AngleIndex(0, 1).is_pm2() and AngleIndex(1, 1).is_pm2()
    with pytest.raises(ValueError):
        AngleIndex(3, 2)


def test_trace_sets_examples():
    plus, minus = trace_sets(5)
    assert (len(plus), len(minus)) == (2, 2)
    assert trace_sets(1) == ([], [])
    assert trace_sets(2) == ([], [AngleIndex(1, 2)])
    for p in range(1, 12):
        assert (p_plus(p), p_minus(p)) == tuple(len(s) for s in trace_sets(p))


def test_irreducible_count_examples(sigma235, m333):
    assert irreducible_count(sigma235) == 2
    assert irreducible_count(S(((2, 1), (3, 1), (7, 1)))) == 3
    assert irreducible_count(m333) == 1
    for p, q in [(5, 1), (7, 3), (1, 4), (2, 1)]:
        assert irreducible_count(S(((p, q), (1, 0), (1, 0)))) == 0


def test_enumerate_sigma235(sigma235):
    t = enumerate_characters(sigma235)
    assert len(t) == 3
    assert [r.kind for r in t.records].count("central") == 1
    irr = t.irreducible
    assert len(irr) == 2
    assert all(r.h_trace == AngleIndex(1, 1) for r in irr)
    assert {r.c_traces[2] for r in irr} == {AngleIndex(1, 5), AngleIndex(3, 5)}


def test_enumerate_333(m333):
    t = enumerate_characters(m333)
    assert len(t.abelian) == 14
    assert len(t.of_kind("exceptional-abelian")) == 1
    assert len(t.irreducible) == 1
    assert all(r.is_abelian for r in enumerate_characters(S(((1, 0), (1, 0), (2, 1)))).records)


def test_enumerate_rejects_euler_zero():
    with pytest.raises(EulerZero):
        enumerate_characters(S(((2, 1), (3, -1), (6, -1))))


def test_reducedness_and_dimension(sigma235, m333):
    assert is_reduced(sigma235) == (True, 0)
    assert is_reduced(m333) == (False, 1)
    assert is_reduced(S(((2, 1), (2, 1), (2, 1))))[0]
    assert skein_dimension(sigma235).value == 3 and skein_dimension(sigma235).exact
    assert skein_dimension(S(((2, 1), (3, 1), (5, 1)))).value == 18
    d = skein_dimension(m333)
    assert (d.value, d.exact, str(d)) == (15, False, ">=15")


def test_table_size_matches_counts_p5():
    for m in sweep_instances(5)[::3]:
        assert len(enumerate_characters(m)) == abelian_count(m) + irreducible_count(m)


def test_brieskorn_count_formula():
    for m in sweep_instances(7)[::5]:
        p = m.p
        if weakly_coprime(*p) and sum(x % 2 == 0 for x in p) <= 1:
            assert 4 * irreducible_count(m) == (p[0] - 1) * (p[1] - 1) * (p[2] - 1)


def test_lens_dimension():
    for n in range(1, 40):
        m = S(((1, n), (1, 0), (1, 0)))
        assert h1_order(m) == n
        assert skein_dimension(m).value == n // 2 + 1


def test_basis_examples(sigma235, m333):
    assert sorted(str(b) for b in basis(sigma235)) == sorted(
        ["(th+2)*tc1^0*tc2^0*tc3^0", "(th-2)*tc1^0*tc2^0*tc3^0", "(th-2)*tc1^0*tc2^0*tc3^1"])
    lens = S(((1, 5), (1, 0), (1, 0)))
    assert abelian_count(lens) == 3
    assert "th^2" in [str(b) for b in basis(lens)]
    with pytest.raises(HypothesisNotMet):
        basis(m333)


def test_basis_alt():
    m = S(((3, 1), (5, 1), (7, 2)))
    if abelian_count(m) % 2:
        m = S(((3, 1), (5, 2), (7, 1)))
    alt = basis_alt(m)
    assert len(alt) == len(basis(m))
    assert all(b.h_kind == "power" for b in alt)
    with pytest.raises(HypothesisNotMet):
        basis_alt(S(((2, 1), (3, -1), (5, -1))))


def test_evaluation_matrix_sigma235(sigma235):
    ev = evaluation_matrix(sigma235)
    c1, c3 = math.cos(math.pi / 5), math.cos(3 * math.pi / 5)
    expected = np.array([[4, 0, 0], [0, -4, -8 * c1], [0, -4, -8 * c3]])
    got = np.real(ev.matrix)
    # same rows and columns up to ordering
    assert sorted(map(tuple, np.round(np.sort(np.abs(got), axis=1), 12))) == sorted(
        map(tuple, np.round(np.sort(np.abs(expected), axis=1), 12)))
    assert abs(np.linalg.det(got)) == pytest.approx(abs(np.linalg.det(expected)))
    assert ev.nonsingular and exact_rank(sigma235) == 3


def test_evaluation_matrix_trivial():
    m = S(((2, 1), (1, 0), (1, 0)))
    ev = evaluation_matrix(m)
    assert ev.matrix.shape == (1, 1) and ev.matrix[0, 0] == pytest.approx(4)


def test_evaluation_matrix_is_square():
    for m in sweep_instances(4)[::11]:
        if weakly_coprime(*m.p):
            ev = evaluation_matrix(m)
            n = abelian_count(m) + irreducible_count(m)
            assert ev.matrix.shape == (n, n)


def test_exact_rank_exposes_singular_instance():
    # y_M even with |H_1| odd: no abelian character has t_h = -2
    m = S(((3, -2), (1, -1), (4, -1)))
    n = len(basis(m))
    assert exact_rank(m) == n - 1
