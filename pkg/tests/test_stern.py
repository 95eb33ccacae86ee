import pytest

from oracles import diatomic_upto, naive_stern_terms
from sternpoly.errors import InvalidParameter
from sternpoly.poly import SparsePoly
from sternpoly.stern import (
    Params,
    alpha,
    closed_form_2k,
    closed_form_2k_minus_1,
    stern_poly,
    stern_value_at_one,
    verify_three_term,
)


def test_base_cases_and_small_values():
    assert stern_poly(2, 0).is_zero
    assert stern_poly(2, 1) == SparsePoly.one()
    assert stern_poly(2, 2) == SparsePoly.monomial(1)
    assert stern_poly(2, 3) == SparsePoly([(0, 1), (2, 1)])
    assert stern_poly(2, 11) == SparsePoly([(0, 1), (2, 1), (4, 1), (8, 1), (10, 1)])
    assert stern_poly(2, 4) == SparsePoly.monomial(3)


def test_matches_naive_recursion():
    for t in (2, 3, 4):
        for n in range(129):
            assert dict(stern_poly(t, n).terms) == naive_stern_terms(t, n), (t, n)


def test_coefficients_are_zero_or_one():
    for t in (2, 3):
        for n in range(1, 200):
            assert all(c == 1 for _, c in stern_poly(t, n).terms)


def test_term_count_is_diatomic():
    dia = diatomic_upto(200)
    for t in (2, 3, 5):
        for n in range(201):
            p = stern_poly(t, n)
            assert p.term_count == dia[n]
            assert p.value_at_one() == dia[n]
            assert stern_value_at_one(t, n) == dia[n]


def test_diatomic_spot_values():
    dia = diatomic_upto(200)
    assert dia[:16] == [0, 1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5, 2, 5, 3, 4]
    for k in range(8):
        assert stern_value_at_one(2, 2**k) == 1
        if k >= 1:
            assert stern_value_at_one(2, 2**k - 1) == k


def test_closed_forms():
    p = Params(2, 3)
    assert closed_form_2k(p) == SparsePoly.monomial(7)
    assert closed_form_2k_minus_1(p) == SparsePoly([(0, 1), (4, 1), (6, 1)])
    for t in (2, 3, 4):
        for k in range(1, 6):
            q = Params(t, k)
            assert closed_form_2k(q) == stern_poly(t, 2**k)
            assert closed_form_2k_minus_1(q) == stern_poly(t, 2**k - 1)
            assert closed_form_2k(q) == SparsePoly.monomial((t**k - 1) // (t - 1))
            assert closed_form_2k_minus_1(q).term_count == k
            assert closed_form_2k_minus_1(q).constant_term == 1


def test_alpha_values():
    assert alpha(1, 5).value == 11
    assert alpha(2, 3).value == 13
    assert [alpha(1, n).value for n in range(1, 7)] == [1, 1, 3, 5, 11, 21]
    assert alpha(2, 1).value == 1
    assert alpha(2, 2).value == 3
    assert alpha(2, 0).value == 0
    for k in range(1, 6):
        for n in range(12):
            v = alpha(k, n).value
            assert v * (2**k + 1) == 2 ** (k * n) - (-1) ** n
    assert alpha(3, 2).value == 2**3 - 1


def test_truncated_construction_matches_truncation():
    for t in (2, 3):
        for n in (7, 11, 21, 85, 170):
            full = stern_poly(t, n)
            for order in (1, 5, 16, 40):
                assert stern_poly(t, n, order=order) == full.truncate(order)


def test_three_term_recurrence():
    for t in (2, 3):
        for k in (1, 2, 3):
            report = verify_three_term(Params(t, k), n_max=6)
            assert report.passed, report.to_text()
            assert len(report.checks) == 5  # n = 2 .. 6


def test_parameter_validation():
    with pytest.raises(InvalidParameter):
        stern_poly(1, 5)
    with pytest.raises(InvalidParameter):
        stern_poly(2, -1)
    with pytest.raises(InvalidParameter):
        Params(2, 0)
    with pytest.raises(InvalidParameter):
        Params(1, 2)
    with pytest.raises(InvalidParameter):
        alpha(0, 3)
    with pytest.raises(InvalidParameter):
        alpha(2, -1)
