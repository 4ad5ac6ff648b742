import pytest
from hypothesis import given, settings, strategies as st

from morsenov.laurent import (
    InexactDivisionError,
    LaurentPoly,
    ONE,
    T,
    ZERO,
    determinant,
    identity_matrix,
    matmul,
)


def P(d):
    return LaurentPoly.from_dict(d)


poly_st = st.dictionaries(st.integers(-4, 4), st.integers(-9, 9), max_size=5).map(P)


def test_normalize_shifts_and_signs():
    assert P({-2: -1, 0: 3}).normalize() == P({0: 1, 2: -3})
    assert P({1: 1}).normalize() == ONE
    assert ZERO.normalize() == ZERO


def test_normalize_is_unit_invariant():
    p = P({0: 2, 1: -5, 3: 1})
    assert (p.shift(7)).normalize() == p.normalize()
    assert (-p).normalize() == p.normalize()


def test_exact_division():
    # (1 - t^4) / (1 - t) = 1 + t + t^2 + t^3
    quotient = (ONE - LaurentPoly.t_power(4)).divide_exact(ONE - T)
    assert quotient == P({0: 1, 1: 1, 2: 1, 3: 1})


def test_division_failure_detected():
    with pytest.raises(InexactDivisionError):
        (ONE + T).divide_exact(P({0: 1, 1: 1, 2: 1}))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE.divide_exact(ZERO)


def test_determinant_of_identity_and_zero_row():
    assert determinant(identity_matrix(3)) == ONE
    assert determinant([[ZERO, ZERO], [ONE, T]]) == ZERO
    assert determinant([]) == ONE


def test_determinant_2x2():
    m = [[T, ONE], [ONE, T]]
    assert determinant(m) == P({2: 1, 0: -1})


def test_determinant_needs_pivot_swap():
    m = [[ZERO, ONE], [ONE, ZERO]]
    assert determinant(m) == P({0: -1})


def test_matmul_identity():
    m = [[T, ONE], [ZERO, T]]
    assert matmul(m, identity_matrix(2)) == m


def test_text_rendering():
    assert P({-1: 1, 0: -3, 2: 2}).to_text() == "t^-1 - 3 + 2*t^2"
    assert ZERO.to_text() == "0"
    assert P({0: 1, 1: -1}).to_text() == "1 - t^1"


def test_json_round_trip():
    p = P({-1: 1, 0: -3, 2: 2})
    assert LaurentPoly.from_json(p.to_json()) == p


def test_evaluation():
    p = P({0: 1, 2: 1})
    assert p(2.0) == 5.0
    assert P({-1: 1})(2.0) == 0.5


@given(poly_st, poly_st, poly_st)
@settings(max_examples=150, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a) == ZERO
    assert a * ONE == a


@given(poly_st, poly_st)
@settings(max_examples=150, deadline=None)
def test_exact_division_inverts_multiplication(a, b):
    if b.is_zero:
        return
    assert (a * b).divide_exact(b) == a


@given(poly_st)
@settings(max_examples=100, deadline=None)
def test_reverse_is_involutive(a):
    assert a.reverse().reverse() == a
