"""Duality of nonsymmetric polynomials and the path bijection."""

from ramyip import (
    check_dual_coefficients, check_path_bijection, check_star_identity,
    evaluate_E, minus_w0, star_poly,
)

CASES = [("d32", (-1, -1)), ("d32", (0, 1)), ("d32", (1, 1)),
         ("a2pp", (1, 0)), ("a2pp", (2, -1)), ("a2pp", (-1, -1)),
         ("koorn2", (-1, -1)), ("koorn2", (0, 1)),
         ("c2un", (1, 0)), ("c2un", (0, 1))]


def _datum(request, name):
    return request.getfixturevalue(name)


def test_star_is_an_involution(d32):
    E = evaluate_E(d32, (0, 1)).normalized
    assert star_poly(star_poly(E)) == E


def test_dual_coefficients(request):
    for name, lam in CASES:
        d = _datum(request, name)
        assert check_dual_coefficients(d, lam), (name, lam)


def test_star_identity(request):
    for name, lam in CASES:
        d = _datum(request, name)
        assert check_star_identity(d, lam), (name, lam)


def test_path_bijection(request):
    for name, lam in CASES:
        d = _datum(request, name)
        assert check_path_bijection(d, lam), (name, lam)


def test_minus_w0_fixed_points(d32, a2pp):
    # w0 = -1 in B2, so -w0 is the identity on weights
    assert minus_w0(d32, (2, 1)) == (2, 1)
    # A2: -w0 swaps the two fundamental weights
    assert minus_w0(a2pp, (1, 0)) == (0, 1)
