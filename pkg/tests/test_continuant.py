from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acvariety.continuant import (
    SIGN_FLIP,
    TransferMatrix,
    du_range,
    identity_failures,
    transfer_product,
    u_eval,
    u_poly,
    u_poly_left,
    u_range,
    variables,
    verify_identities,
)
from acvariety.polyalg import SparsePoly, parse_poly

from strategies import rationals


def _perm_sign(p):
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign *= -1 if length % 2 == 0 else 1
    return sign


def leibniz_det(m):
    """Permutation-sum determinant; independent of any recurrence."""
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        term = _perm_sign(p)
        for i in range(n):
            term = term * m[i][p[i]]
            if isinstance(term, int) and term == 0:
                break
        total = total + term
    return total


def tridiagonal(diag):
    n = len(diag)
    return [[diag[i] if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("n", range(1, 7))
def test_polynomial_matches_permutation_determinant(n):
    xs = variables(n)
    assert leibniz_det(tridiagonal(xs)) == u_poly(1, n, n)


@given(st.lists(rationals, min_size=0, max_size=7))
def test_evaluation_matches_determinant(vals):
    expected = leibniz_det(tridiagonal(vals)) if vals else 1
    assert u_eval(vals) == expected


@given(st.lists(rationals, min_size=1, max_size=9))
def test_evaluation_matches_polynomial(vals):
    n = len(vals)
    assert u_poly(1, n, n).eval(vals) == u_eval(vals)


@given(st.lists(rationals, min_size=2, max_size=9))
def test_reversal_symmetry(vals):
    assert u_eval(vals) == u_eval(vals[::-1])


@given(st.lists(rationals, min_size=3, max_size=9), st.data())
def test_derivative_formula_at_points(vals, data):
    n = len(vals)
    k = data.draw(st.integers(1, n))
    assert u_poly(1, n, n).diff(k).eval(vals) == du_range(vals, 1, n, k)


def test_known_expansions():
    assert u_poly(1, 2) == parse_poly("x1*x2 - 1", 2)
    assert u_poly(1, 4) == parse_poly("x1*x2*x3*x4 - x1*x2 - x3*x4 - x1*x4 + 1", 4)
    assert u_poly(1, 5) == parse_poly(
        "x1*x2*x3*x4*x5 - x1*x2*x3 - x1*x2*x5 - x1*x4*x5 - x3*x4*x5 + x1 + x3 + x5", 5)
    assert u_poly(3, 2, 3) == 1
    assert u_poly(2, 2, 3) == SparsePoly.var(2, 3)


def test_left_and_right_recurrences_agree():
    for lo in range(1, 4):
        for hi in range(lo - 1, 9):
            assert u_poly(lo, hi, 9) == u_poly_left(lo, hi, 9)


def test_invalid_ranges():
    with pytest.raises(ValueError):
        u_poly(0, 3)
    with pytest.raises(ValueError):
        u_poly(4, 2)
    with pytest.raises(ValueError):
        u_poly(1, 5, 4)


def test_evaluation_examples():
    assert u_eval([-1, -1, -1]) == 1
    assert u_eval([2]) == 2
    assert u_eval([]) == 1
    for m in range(1, 7):
        assert u_eval([0] * (2 * m)) == (-1) ** m
    assert u_range([5, 1, 2, 7], 2, 3) == 1


def test_float_evaluation():
    assert abs(u_eval([0.5, 2.0, 4.0]) - (0.5 * 2 * 4 - 0.5 - 4)) < 1e-12


def test_transfer_product_examples():
    x1, x2 = variables(2)
    assert transfer_product([x1, x2]) == TransferMatrix(-1, -x2, x1, x1 * x2 - 1)
    assert transfer_product([]) == TransferMatrix.identity()
    assert transfer_product(variables(5)).det() == 1
    assert SIGN_FLIP @ SIGN_FLIP == TransferMatrix.identity()


@given(st.lists(rationals, min_size=1, max_size=8))
def test_transfer_product_entries(vals):
    n = len(vals)
    m = transfer_product(vals)
    assert m.d == u_range(vals, 1, n)
    assert m.c == u_range(vals, 1, n - 1)
    assert m.b == -u_range(vals, 2, n)
    assert m.det() == 1


def test_zero_step_squares_to_minus_identity():
    z = TransferMatrix.step(0)
    assert z @ z == -TransferMatrix.identity()


def test_identity_suite_passes():
    report = verify_identities(8)
    assert identity_failures(report) == []
    names = {r["identity"] for r in report}
    assert {"zero-insertion-matrix", "transpose-conjugation", "zero-insertion", "partial-derivative",
            "determinant-one", "product-forward", "product-reversed"} <= names
    assert {r["k"] for r in report if r["identity"] == "zero-insertion" and r["n"] == 6} == {2, 3, 4, 5}


def test_identity_suite_requires_room():
    with pytest.raises(ValueError):
        verify_identities(2)


def test_fraction_values_stay_exact():
    assert u_eval([Fraction(1, 3), Fraction(3)]) == 0
