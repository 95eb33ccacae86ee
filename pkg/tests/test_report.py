from fractions import Fraction

import pytest

from sternpoly.errors import InternalInvariant, InvalidParameter
from sternpoly.report import (
    CheckReport,
    decimal_str,
    parse_rational,
    rational_str,
)


def test_rational_str():
    assert rational_str(Fraction(3, 4)) == "3/4"
    assert rational_str(Fraction(5)) == "5/1"
    assert rational_str(Fraction(-2, 6)) == "-1/3"


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -7 ") == Fraction(-7)
    assert parse_rational("0.25") == Fraction(1, 4)
    with pytest.raises(InvalidParameter):
        parse_rational("x/y")
    with pytest.raises(InvalidParameter):
        parse_rational("1/0")


def test_decimal_str():
    assert decimal_str(Fraction(1, 3), 6) == "0.333333"
    assert decimal_str(Fraction(2, 3), 6) == "0.666667"
    assert decimal_str(Fraction(1, 2), 1) == "0.5"
    assert decimal_str(Fraction(-1, 8), 3) == "-0.125"
    assert decimal_str(Fraction(5, 4), 1) == "1.3"  # round half up
    assert decimal_str(Fraction(1349, 1092), 12) == "1.235347985348"
    with pytest.raises(InvalidParameter):
        decimal_str(Fraction(1), 0)


def test_check_report_mechanics():
    report = CheckReport(suite="demo", params={"t": 2})
    report.add("first", {"n": 1}, True)
    assert report.passed
    with pytest.raises(InternalInvariant):
        report.add("second", {}, False)  # failing check must carry detail
    report.add("second", {"n": 2}, False, "explanation")
    assert not report.passed
    assert report.checks[1].params == {"n": "2"}


def test_report_json_round_trip():
    report = CheckReport(suite="demo", params={"t": "2"})
    report.add("a", {"n": "1"}, True)
    report.add("b", {"n": "2"}, False, "broke")
    text = report.to_json()
    again = CheckReport.from_json(text)
    assert again.to_json() == text
    obj = report.to_json_obj()
    assert list(obj) == ["suite", "params", "checks", "pass"]
    assert obj["pass"] is False


def test_report_json_validation():
    with pytest.raises(InvalidParameter):
        CheckReport.from_json("not json {")
    with pytest.raises(InvalidParameter):
        CheckReport.from_json_obj({"suite": "x"})
    good = CheckReport(suite="x")
    good.add("a", {}, True)
    obj = good.to_json_obj()
    obj["pass"] = False  # flag contradicts the checks
    with pytest.raises(InvalidParameter):
        CheckReport.from_json_obj(obj)


def test_report_text():
    report = CheckReport(suite="demo")
    report.add("alpha", {"n": "3"}, True)
    report.add("beta", {}, False, "why")
    text = report.to_text()
    assert "[PASS] alpha (n=3)" in text
    assert "[FAIL] beta: why" in text
    assert text.endswith("result: FAIL (1/2 checks)")
