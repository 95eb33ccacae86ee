from fractions import Fraction

import pytest

from oracles import naive_stern_terms
from sternpoly.errors import (
    AlphaOutOfRange,
    DivisionByZero,
    InternalInvariant,
    InvalidParameter,
    NonConvergence,
)
from sternpoly.report import decimal_str
from sternpoly.series import (
    RationalInterval,
    TruncatedSeries,
    agreement_degree,
    eval_series_certified,
    h_series,
    verify_agreement_monotone,
    verify_functional_equation,
    verify_mat_system,
)
from sternpoly.stern import Params, alpha

GRID = [Params(t, k) for t in (2, 3) for k in (1, 2, 3)]


def test_frozen_truncations():
    assert h_series(Params(2, 1), 12).bitstring == "101010001010"
    exps = tuple(e for e, _ in h_series(Params(2, 1), 24).to_poly().terms)
    assert exps == (0, 2, 4, 8, 10, 16, 18, 20)


def test_matches_stabilized_index_polynomial():
    # Consecutive index polynomials agree below t**((n-1)*k), so these n are
    # deep enough that the order-64 window has already frozen.
    for params, n in [(Params(2, 1), 8), (Params(3, 1), 8),
                      (Params(2, 2), 5), (Params(3, 2), 5),
                      (Params(2, 3), 4), (Params(3, 3), 4)]:
        idx = alpha(params.k, n).value
        reference = {e: c for e, c in naive_stern_terms(params.t, idx).items() if e < 64}
        assert dict(h_series(params, 64).to_poly().terms) == reference, params


def test_prefix_stability():
    for params in GRID:
        short = h_series(params, 32)
        long = h_series(params, 128)
        assert long.coeffs[:32] == short.coeffs


def test_non_convergence():
    with pytest.raises(NonConvergence):
        h_series(Params(2, 1), 64, max_iterations=1)


def test_agreement_degrees():
    p = Params(2, 1)
    assert [agreement_degree(p, n) for n in range(2, 8)] == [2, 4, 8, 16, 32, 64]
    with pytest.raises(InvalidParameter):
        agreement_degree(Params(2, 1), 1)  # both index values are 1
    for params in GRID:
        report = verify_agreement_monotone(params)
        assert report.passed, report.to_text()


def test_functional_equation():
    for params in GRID:
        report = verify_functional_equation(params, 256)
        assert report.passed, report.to_text()
    assert verify_functional_equation(Params(2, 1), 1).passed


def test_matrix_rows():
    for params in GRID:
        report = verify_mat_system(params, 256)
        assert report.passed, report.to_text()
        names = [item.name for item in report.checks]
        assert "row1_composition" in names or any("row1" in n for n in names)
        assert any("row2" in n for n in names)


def test_certified_eval_frozen_values():
    iv = eval_series_certified(Params(2, 1), Fraction(1, 2), 64)
    assert decimal_str(iv.lo, 12) == "1.317402839967"
    assert decimal_str(iv.hi, 12) == "1.317402839967"
    assert decimal_str(iv.lo, 18) == "1.317402839967371619"
    quarter = eval_series_certified(Params(2, 1), Fraction(1, 4), 64)
    assert decimal_str(quarter.lo, 12) == "1.066422462712"
    one = eval_series_certified(Params(2, 1), Fraction(1, 2), 1)
    assert (one.lo, one.hi) == (1, 2)


def test_certified_eval_structure():
    point = Fraction(1, 2)
    for params in GRID:
        iv = eval_series_certified(params, point, 48)
        tail = point**48 / (1 - point)
        assert iv.width == tail  # positive point: one-sided tail
        nested = eval_series_certified(params, point, 96)
        assert iv.encloses(nested)
    neg = eval_series_certified(Params(3, 1), Fraction(-1, 2), 32)
    tail = Fraction(1, 2) ** 32 / (1 - Fraction(1, 2))
    assert neg.width == 2 * tail  # sign-alternating point: two-sided tail
    assert neg.encloses(eval_series_certified(Params(3, 1), Fraction(-1, 2), 64))


def test_certified_eval_contains_oracle_sum():
    # Partial sums from an independently computed deep index polynomial must
    # land inside every certified interval for the same point.
    terms = naive_stern_terms(2, alpha(1, 10).value)
    point = Fraction(1, 3)
    deep = sum(point**e for e in terms if e < 200)
    for order in (4, 16, 50):
        assert eval_series_certified(Params(2, 1), point, order).contains(deep)


def test_eval_point_validation():
    for bad in (Fraction(0), Fraction(1), Fraction(-1), Fraction(3, 2)):
        with pytest.raises(AlphaOutOfRange):
            eval_series_certified(Params(2, 1), bad, 8)


def test_rational_interval():
    with pytest.raises(InvalidParameter):
        RationalInterval(Fraction(2), Fraction(1))
    iv = RationalInterval(Fraction(1, 2), Fraction(3, 2))
    assert iv.width == 1 and iv.midpoint == 1
    assert iv.contains(Fraction(1)) and not iv.contains(Fraction(2))
    assert RationalInterval(Fraction(-1), Fraction(1)).contains_zero()
    q = RationalInterval(Fraction(2), Fraction(4)).divide(RationalInterval(Fraction(1), Fraction(2)))
    assert (q.lo, q.hi) == (1, 4)
    neg = RationalInterval(Fraction(2), Fraction(4)).divide(RationalInterval(Fraction(-2), Fraction(-1)))
    assert (neg.lo, neg.hi) == (-4, -1)
    with pytest.raises(DivisionByZero):
        iv.divide(RationalInterval(Fraction(-1), Fraction(1)))


def test_series_json():
    s = h_series(Params(2, 2), 16)
    obj = s.to_json_obj()
    assert obj["t"] == "2" and obj["k"] == "2" and obj["order"] == "16"
    assert set(obj["coeffs"]) <= {"0", "1"} and len(obj["coeffs"]) == 16
    assert TruncatedSeries.from_json_obj(obj) == s
    with pytest.raises(InvalidParameter):
        TruncatedSeries.from_json_obj({"t": "2", "k": "1"})
    with pytest.raises(InvalidParameter):
        TruncatedSeries(t=2, k=1, order=3, coeffs=(1, 0))
    bad = TruncatedSeries(t=2, k=1, order=2, coeffs=(1, 7))
    with pytest.raises(InternalInvariant):
        bad.bitstring
