"""Affine Weyl elements: actions, lengths, inversions, reduced words."""

import itertools
import random

import pytest

from ramyip import (
    AffineWeight, WordNotReduced, X_SIDE, Y_SIDE,
    build_datum, group_x, group_y, m_lambda, translation_inversion_formula,
    u_lambda_elem, wt_dir,
)
from ramyip.rootdata import DUAL_UNTWISTED, KOORNWINDER, UNTWISTED, vec_neg

E1 = (1, 1)  # e_1 = a1 + a2 in the Q(B2) alpha basis
E2 = (0, 1)


def test_translation_action(d32):
    gx = group_x(d32)
    # t_mu(x) = x - (mu, x) delta and t_mu(delta) = delta
    t = gx.translation(E1)
    x = AffineWeight(X_SIDE, E2, 0)
    out = gx.act(t, x)
    assert out.classical == E2
    assert out.delta_num == -d32.side_x.pairing_num(E1, E2)
    delta = AffineWeight(X_SIDE, (0, 0), d32.m)
    assert gx.act(t, delta) == delta
    assert gx.act(gx.ident, x) == x


def test_s0y_is_translation_times_reflection(b2pp):
    # t_{-theta} = s_theta s_0^Y = s_1 s_2 s_1 s_0^Y
    gy = group_y(b2pp)
    word_elem = gy.from_word((1, 2, 1, 0))
    assert word_elem == gy.translation((-1, 0))  # theta = e_1 = omega_1 in P coords


def test_inversions_t_omega1(d32):
    gx = group_x(d32)
    w = gx.translation(E1)
    k, word = gx.reduced_word(w)
    assert (k, word) == (0, (0, 1, 2, 1))
    inv = gx.inversions(w)
    assert len(inv) == 4 == gx.length(w)
    X = d32.X
    expected = {
        (X.alpha[0], 0), (tuple(a + b for a, b in zip(X.alpha[0], X.alpha[1])), 0),
        ((X.alpha[0][0] + 2 * X.alpha[1][0], X.alpha[0][1] + 2 * X.alpha[1][1]), 0),
        (tuple(a + b for a, b in zip(X.alpha[0], X.alpha[1])), d32.m),
    }
    assert {(x.classical, x.delta_num) for x in inv} == expected
    assert gx.inversion_orbit_counts(w) == {"short": 1, "long": 2, "zero_orbit": 1}


def test_inversions_of_minus_e1_word(d32):
    gy = group_y(d32)
    w = gy.translation(vec_neg(E1))
    assert gy.reduced_word(w) == (0, (1, 2, 1, 0))
    inv = {(x.classical, x.delta_num // d32.m) for x in gy.inversions(w)}
    # 2delta-(e1-e2), 2delta-e1, 2delta-(e1+e2), delta-e1 in alpha coordinates
    assert inv == {((-1, 0), 2), ((-1, -1), 2), ((-1, -2), 2), ((-1, -1), 1)}
    assert gy.inversions(gy.ident) == []


def test_reduced_word_simple_and_pi(a2pp):
    gy = group_y(a2pp)
    for i in range(3):
        assert gy.reduced_word(gy.simple(i)) == (0, (i,))
    assert gy.reduced_word(gy.translation((1, 0))) == (1, (2, 1))
    assert sorted(gy.pi_elements()) == [0, 1, 2]


def test_pi_conjugation_permutes_simples(a2pp, d32, b2pp):
    for d in (a2pp, b2pp):
        for g in (group_x(d), group_y(d)):
            for k, pi in g.pi_elements().items():
                perm = g.pi_node_action(k)
                for i in range(d.rank + 1):
                    lhs = g.mul(g.mul(pi, g.simple(i)), g.inv(pi))
                    assert lhs == g.simple(perm[i])
    # Q lattices have trivial Pi
    assert list(group_x(d32).pi_elements()) == [0]


def test_m_lambda_examples(a2pp, d32):
    # A2: lam = alpha_1 = (2,-1): u_lam = s2 s1
    gy = group_y(a2pp)
    m, u = m_lambda(a2pp, (2, -1))
    s1, s2 = gy.gens[0], gy.gens[1]
    assert u == gy.fin_mul(s2, s1)
    assert m == gy.mul(gy.translation((2, -1)), gy.from_finite(gy.fin_inv(u)))
    # antidominant: u = id, m = t_lam
    m2, u2 = m_lambda(d32, vec_neg(E1))
    assert u2 == group_y(d32).fin_id
    assert m2 == group_y(d32).translation(vec_neg(E1))
    # lam = 0
    m3, u3 = m_lambda(d32, (0, 0))
    assert m3 == group_y(d32).ident


def test_wt_dir(a2pp):
    gy = group_y(a2pp)
    t = gy.translation((1, -1))
    assert wt_dir(t) == ((1, -1), gy.fin_id)
    w = gy.mul(gy.simple(2), gy.simple(0))
    wt, fin = wt_dir(w)
    assert wt == (2, -1)  # alpha_1
    assert fin == gy.fin_mul(gy.gens[0], gy.gens[1])  # s1 s2
    u = gy.from_finite(gy.gens[1])
    assert wt_dir(u) == ((0, 0), gy.gens[1])


def test_length_cocycle_exhaustive(d32):
    gy = group_y(d32)
    level = [gy.ident]
    seen = {gy.ident}
    for _ in range(5):
        nxt = []
        for w in level:
            lw = gy.length(w)
            for i in range(d32.rank + 1):
                ws = gy.mul(w, gy.simple(i))
                ls = gy.length(ws)
                assert abs(ls - lw) == 1
                # descent iff w(alpha_i) negative
                neg = gy.is_negative(gy.act(w, gy.alpha(i)))
                assert (ls < lw) == neg
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        level = nxt


def test_inversion_count_formulas():
    random.seed(2024)
    data = [
        build_datum(("B", 2), ("B", 2), "Q", "Q", KOORNWINDER),
        build_datum(("A", 2), ("A", 2), "P", "P", UNTWISTED),
        build_datum(("C", 2), ("B", 2), "P", "P", UNTWISTED),
        build_datum(("C", 2), ("B", 2), "P", "Q", UNTWISTED),
        build_datum(("G", 2), ("G", 2), "P", "P", UNTWISTED),
        build_datum(("B", 3), ("B", 3), "Q", "Q", DUAL_UNTWISTED),
        build_datum(("A", 1), ("A", 1), "Q", "Q", DUAL_UNTWISTED),
    ]
    for d in data:
        gx = group_x(d)
        found = 0
        while found < 50:
            mu = tuple(random.randint(0, 4) for _ in range(d.rank))
            if not d.Y.is_dominant(mu):
                continue
            found += 1
            assert translation_inversion_formula(d, mu) == \
                gx.inversion_orbit_counts(gx.translation(mu))


def test_grassmannian_inversions(d32, a2pp, c2un):
    # every inversion root of m_lambda lies in Z_{>0} delta - R_+(Y)
    for d in (d32, a2pp, c2un):
        gy = group_y(d)
        for lam in itertools.product(range(-2, 3), repeat=d.rank):
            m, _ = m_lambda(d, lam)
            for x in gy.inversions(m):
                assert x.delta_num > 0
                assert gy.is_negative(AffineWeight(Y_SIDE, x.classical, 0))


def test_word_validation(d32):
    from ramyip.paths import PathFamily
    gy = group_y(d32)
    w = gy.translation(vec_neg(E1))
    with pytest.raises(WordNotReduced):
        PathFamily(d32, gy.ident, w, word=(1, 2, 1, 1))
    with pytest.raises(WordNotReduced):
        PathFamily(d32, gy.ident, w, word=(1, 2, 1, 0, 2, 2))
    fam = PathFamily(d32, gy.ident, w, word=(1, 2, 1, 0))
    assert fam.word == (1, 2, 1, 0)
