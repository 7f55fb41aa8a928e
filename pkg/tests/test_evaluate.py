"""The alcove-path formula: normalization, symmetrization, mixed types."""

import pytest

from ramyip import (
    HeckeOps, NotDominant, VariantRequiresKoornwinder, XPoly,
    build_datum, evaluate_E, evaluate_E_mixed, evaluate_P, group_y,
    mixed_datum, oversymmetrized_P, w0_coset_reps,
)
from ramyip.rootdata import MIXED_A2N2, MIXED_A2N2_DAGGER


def test_e_zero_is_one(d32, a2pp, koorn2):
    for d in (d32, a2pp, koorn2):
        res = evaluate_E(d, (0,) * d.rank)
        hecke = HeckeOps(d)
        assert res.normalized == hecke.one
        assert res.tilde == hecke.one


def test_normalization_coefficient(d32, a2pp, koorn2, c2un):
    cases = [(d32, (-1, -1)), (d32, (1, 1)), (d32, (0, 1)),
             (a2pp, (1, 0)), (a2pp, (2, -1)), (koorn2, (-1, -1)),
             (c2un, (1, 0)), (c2un, (0, 1))]
    for d, lam in cases:
        res = evaluate_E(d, lam)
        assert res.normalized.coeff(lam) == d.ring.one, (d, lam)


def test_e_golden_d32_at_equal_params(d32):
    res = evaluate_E(d32, (-1, -1), params="equal")
    E = res.normalized
    lim = {k: c.limit_zero("v") for k, c in E.terms.items()}
    ring = d32.equal_ring
    assert lim == {
        (-1, -1): ring.one, (0, -1): ring.one, (0, 1): ring.one,
        (1, 1): ring.one, (0, 0): ring.one + ring.q_power(d32.m),
    }


def test_p_trivial_and_symmetry(d32, a2pp):
    for d in (d32, a2pp):
        assert evaluate_P(d, (0,) * d.rank).poly == HeckeOps(d).one
    res = evaluate_P(d32, (1, 1))
    P = res.poly
    # W_0 invariance: s_i P = P for classical i
    for i in range(d32.rank):
        moved = P.map_keys(lambda k, c: (tuple(
            sum(d32.X.s_mat[i][r][j] * k[j] for j in range(d32.rank))
            for r in range(d32.rank)), c))
        assert moved == P
    # orbit-sum coefficient 1: the coefficient of X^{u(lam)} is 1 for each u
    gy = group_y(d32)
    from ramyip.rootdata import mat_vec
    for fin in w0_coset_reps(d32, (1, 1)):
        assert P.coeff(mat_vec(fin.mx, (1, 1))) == d32.ring.one


def test_p_routes_agree_and_oversymmetrization(d32, a2pp, c2un):
    for d, lam in [(d32, (1, 1)), (a2pp, (1, 0)), (a2pp, (1, 1)), (c2un, (0, 1))]:
        res = evaluate_P(d, lam)          # raises if the two routes disagree
        assert res.via_hecke == res.via_paths
        assert oversymmetrized_P(d, lam) == res.poly, (d, lam)


def test_p_requires_dominant(d32):
    with pytest.raises(NotDominant):
        evaluate_P(d32, (-1, 0))


def test_mixed_requires_koornwinder(a2pp, koorn2):
    with pytest.raises(VariantRequiresKoornwinder):
        evaluate_E_mixed(a2pp, None, (1, 0))
    with pytest.raises(VariantRequiresKoornwinder):
        evaluate_E_mixed(koorn2, None, (1, 1))
    with pytest.raises(VariantRequiresKoornwinder):
        mixed_datum("bogus", 2)


def test_mixed_equals_substituted_koornwinder(koorn2, mixed2, mixed2dag):
    lam = (-1, -1)
    rk = evaluate_E(koorn2, lam).normalized
    for dm in (mixed2, mixed2dag):
        rm = evaluate_E(dm, lam).normalized
        if dm.affine_class == MIXED_A2N2:
            sub = {"v2": dm.ring.one, "vz": dm.ring.var("v0")}
        else:
            sub = {"v2": dm.ring.var("vs"), "vz": dm.ring.one}
        remap = rk.map_coeffs(lambda c: c.substitute(sub, dm.ring), dm.ring)
        assert remap == rm


def test_mixed_closed_forms_agree(mixed2, mixed2dag):
    # evaluate_E_mixed cross-checks the equal-parameter closed form internally
    for dm in (mixed2, mixed2dag):
        for lam in [(-1, -1), (1, 1), (0, 1)]:
            evaluate_E_mixed(dm, None, lam)


def test_mixed_datum_constructor():
    dm = mixed_datum(MIXED_A2N2, 2)
    assert dm.affine_class == MIXED_A2N2
    assert dm.active_params == ("vs", "vl", "v0")
    dmd = mixed_datum(MIXED_A2N2_DAGGER, 3)
    assert dmd.param_subs == {"vz": "1", "v2": "vs"}


def test_rank3_smoke():
    d = build_datum(("B", 3), ("B", 3), "Q", "Q", "koornwinder")
    res = evaluate_E(d, (0, 0, 1))
    assert res.normalized.coeff((0, 0, 1)) == d.ring.one
