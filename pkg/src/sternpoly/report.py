"""Pass/fail reporting with a canonical JSON form.

Reports serialize every number as a decimal string so arbitrary-precision
values survive the trip; `pass` flags stay JSON booleans.  Field order and
separators are fixed, so parse -> serialize round-trips byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InternalInvariant, InvalidParameter


def rational_str(x: Fraction) -> str:
    """Render p/q in lowest terms, sign on the numerator, denominator kept."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or a bare integer 'p' into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidParameter(f"cannot parse rational from {text!r}")


def decimal_str(x: Fraction, digits: int) -> str:
    """Fixed-point decimal rendering with `digits` places, round half up."""
    if not isinstance(digits, int) or isinstance(digits, bool) or digits < 1:
        raise InvalidParameter(f"digits must be a positive integer, got {digits!r}")
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    y = abs(x) * 10**digits
    q, r = divmod(y.numerator, y.denominator)
    if 2 * r >= y.denominator:
        q += 1
    s = str(q).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


@dataclass
class CheckItem:
    name: str
    params: dict[str, str]
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    """An ordered collection of named checks with one overall verdict."""

    suite: str
    params: dict[str, str] = field(default_factory=dict)
    checks: list[CheckItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, params: dict, passed: bool, detail: str = "") -> None:
        """Append one check; a failing check must explain itself."""
        if not passed and not detail:
            raise InternalInvariant(f"failing check {name!r} recorded without detail")
        self.checks.append(
            CheckItem(name, {str(k): str(v) for k, v in params.items()}, bool(passed), detail)
        )

    def extend(self, other: "CheckReport") -> None:
        self.checks.extend(other.checks)

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "params": {str(k): str(v) for k, v in self.params.items()},
            "checks": [
                {"name": c.name, "params": c.params, "pass": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, ensure_ascii=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CheckReport":
        if not isinstance(obj, dict):
            raise InvalidParameter("report JSON must be an object")
        try:
            report = cls(suite=str(obj["suite"]), params=dict(obj["params"]))
            for c in obj["checks"]:
                report.checks.append(
                    CheckItem(str(c["name"]), dict(c["params"]), bool(c["pass"]), str(c["detail"]))
                )
        except (KeyError, TypeError):
            raise InvalidParameter("report JSON is missing required fields")
        if bool(obj.get("pass")) != report.passed:
            raise InvalidParameter("report 'pass' flag disagrees with its checks")
        return report

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidParameter(f"report is not valid JSON: {exc}")
        return cls.from_json_obj(obj)

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        for key, value in self.params.items():
            lines.append(f"  {key} = {value}")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            ctx = " ".join(f"{k}={v}" for k, v in c.params.items())
            line = f"[{mark}] {c.name}"
            if ctx:
                line += f" ({ctx})"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
        verdict = "pass" if self.passed else "FAIL"
        lines.append(f"result: {verdict} ({sum(c.passed for c in self.checks)}/{len(self.checks)} checks)")
        return "\n".join(lines)
