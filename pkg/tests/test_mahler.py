from fractions import Fraction

import pytest

from sternpoly.contfrac import cf_terms, convergents
from sternpoly.errors import PrecisionTooLow
from sternpoly.mahler import (
    a_matrix_pole_check,
    b_matrix,
    det_check,
    g_at_one,
    g_at_one_spectral,
    g_constant_terms,
    g_nonvanishing,
    g_product,
    g_recur,
    verify_g_construction,
)
from sternpoly.poly import SparsePoly
from sternpoly.report import decimal_str
from sternpoly.stern import Params

GRID = [Params(t, k) for t in (2, 3) for k in (1, 2, 3)]


def test_frozen_level_one():
    b = b_matrix(Params(2, 1))
    assert b.entries() == (
        SparsePoly.zero(),
        SparsePoly.monomial(2),
        SparsePoly.one(),
        SparsePoly([(0, -1)]),
    )


def test_frozen_level_two():
    g = g_product(Params(2, 1), 2)
    assert g.g11 == SparsePoly.monomial(4)
    assert g.g12 == SparsePoly.monomial(4, -1)
    assert g.g21 == SparsePoly([(0, -1)])
    assert g.g22 == SparsePoly([(0, 1), (2, 1)])


def test_frozen_integer_matrices():
    p = Params(2, 1)
    assert g_at_one(p, 1) == ((0, 1), (1, -1))
    assert g_at_one(p, 2) == ((1, -1), (-1, 2))
    assert g_at_one(p, 3) == ((-1, 2), (2, -3))


def test_pole_check():
    for params in GRID:
        assert a_matrix_pole_check(params).passed


def test_product_equals_recurrence():
    for params in GRID:
        report = verify_g_construction(params, 8)
        assert report.passed, report.to_text()
        assert len(report.checks) == 8


def test_constant_terms_and_nonvanishing():
    for params in GRID:
        assert g_constant_terms(params, 8).passed
        assert g_nonvanishing(params, 8).passed
    g1 = g_recur(Params(2, 2), 1)
    assert g1.g11.is_zero and not g1.g12.is_zero


def test_determinants():
    for params in GRID:
        report = det_check(params, 6)
        assert report.passed, report.to_text()


def test_determinant_matches_convergent_determinant():
    # det G(n; z) must be exactly minus the convergent cross-determinant
    # p_n q_{n-1} - p_{n-1} q_n of the continued fraction at the same level.
    for params in [Params(2, 1), Params(3, 2)]:
        b0, terms = cf_terms(params, 4)
        pairs = convergents(b0, terms)
        for n in range(1, 5):
            g = g_recur(params, n)
            det_g = g.g11 * g.g22 - g.g12 * g.g21
            det_cf = pairs[n].p * pairs[n - 1].q - pairs[n - 1].p * pairs[n].q
            assert det_g == -det_cf, (params, n)


def test_spectral_fit():
    for t in (2, 3):
        for k in (1, 2, 3):
            report, fit = g_at_one_spectral(Params(t, k), 20, precision=60)
            assert report.passed, report.to_text()
            assert fit.residual < Fraction(1, 10**12)
            assert 0 < fit.gamma < 1 < abs(fit.delta)
            assert fit.delta < 0


def test_spectral_frozen_roots():
    _, fit = g_at_one_spectral(Params(2, 1), 20, precision=60)
    assert decimal_str(fit.gamma, 12) == "0.618033988750"
    assert decimal_str(fit.delta, 12) == "-1.618033988750"
    _, fit2 = g_at_one_spectral(Params(2, 2), 20, precision=60)
    assert decimal_str(fit2.delta, 6) == "-2.414214"


def test_entry_growth_tracks_dominant_root():
    # |g22| ratios approach |delta|; by n = 15 they are within 1 percent.
    for k in (1, 2, 3):
        _, fit = g_at_one_spectral(Params(2, k), 20, precision=60)
        a = abs(g_at_one(Params(2, k), 14)[1][1])
        b = abs(g_at_one(Params(2, k), 15)[1][1])
        ratio = Fraction(b, a)
        assert abs(ratio - abs(fit.delta)) / abs(fit.delta) < Fraction(1, 100)


def test_precision_too_low():
    with pytest.raises(PrecisionTooLow):
        g_at_one_spectral(Params(2, 1), 100, precision=2)


def test_json_objects():
    g = g_recur(Params(2, 1), 2)
    obj = g.to_json_obj()
    assert obj["n"] == "2"
    assert obj["g"][0][0] == {"terms": [["4", "1"]]}
    _, fit = g_at_one_spectral(Params(2, 1), 5, precision=20)
    fobj = fit.to_json_obj()
    assert fobj["k"] == "1"
    assert fobj["gamma"].startswith("0.6180339887")
    assert len(fobj["c"]) == 2 and len(fobj["c"][0]) == 2
