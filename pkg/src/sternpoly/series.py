"""The limit series of the Stern polynomials along the index sequence.

For fixed (t, k) the truncations of a(alpha(k, n); z) stabilize as n grows:
every coefficient below a given order stops changing once n is large enough.
The stabilized power series H(z) has 0/1 coefficients, constant term 1, and
satisfies the functional equation

    H(z) = a(2**k - 1; z) * H(z**(t**k)) + a(2**k; z**(t**k)) * H(z**(t**(2k)))

where a(2**k; z**(t**k)) is the single monomial z**d1 with
d1 = t**k * (t**k - 1) / (t - 1).  Writing f1(z) = H(z) and
f2(z) = H(z**(t**k)) turns that into a 2x2 linear system relating
(f1, f2) at z**(t**k) to (f1, f2) at z; the denominator-cleared second row is
checked here to truncation order, the matrix itself lives in `mahler`.

Evaluation inside the unit interval is certified: the partial sum is exact
rational arithmetic and the discarded tail is bounded by the geometric series
with coefficient bound 1, giving a rational interval guaranteed to contain
the true value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AlphaOutOfRange, InternalInvariant, InvalidParameter, NonConvergence
from .poly import SparsePoly
from .report import CheckReport, rational_str
from .stern import Params, _require_int, alpha, stern_poly

DEFAULT_MAX_ITERATIONS = 64


@dataclass(frozen=True)
class TruncatedSeries:
    """First `order` coefficients of the limit series for parameters (t, k)."""

    t: int
    k: int
    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order:
            raise InvalidParameter(
                f"coefficient vector has length {len(self.coeffs)}, order is {self.order}"
            )

    def to_poly(self) -> SparsePoly:
        return SparsePoly._raw(tuple((i, c) for i, c in enumerate(self.coeffs) if c))

    @property
    def bitstring(self) -> str:
        if any(c not in (0, 1) for c in self.coeffs):
            raise InternalInvariant("series coefficients left the set {0, 1}")
        return "".join(str(c) for c in self.coeffs)

    def to_json_obj(self) -> dict:
        return {
            "t": str(self.t),
            "k": str(self.k),
            "order": str(self.order),
            "coeffs": self.bitstring,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TruncatedSeries":
        try:
            t, k, order = int(obj["t"]), int(obj["k"]), int(obj["order"])
            coeffs = tuple(int(ch) for ch in obj["coeffs"])
        except (KeyError, TypeError, ValueError):
            raise InvalidParameter("series JSON must carry t, k, order, coeffs")
        return cls(t=t, k=k, order=order, coeffs=coeffs)


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidParameter(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def encloses(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def divide(self, other: "RationalInterval") -> "RationalInterval":
        """Exact interval quotient; the divisor must exclude zero."""
        from .errors import DivisionByZero

        if other.contains_zero():
            raise DivisionByZero("interval division by an interval containing zero")
        quotients = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ]
        return RationalInterval(min(quotients), max(quotients))

    def to_json_obj(self) -> dict:
        return {"lo": rational_str(self.lo), "hi": rational_str(self.hi)}


def _h_poly(params: Params, order: int, max_iterations: int) -> SparsePoly:
    """Stabilized truncation of a(alpha(k, n); z) below z**order.

    Iterates n = 2, 3, ... and stops as soon as two successive truncations
    agree exactly.  The comparison starts at n = 2 because alpha(k, 1) = 1
    and, for k = 1, alpha(1, 2) = 1 as well: comparing from n = 1 would
    declare the constant polynomial stable before the sequence has moved.
    """
    t, k = params.t, params.k
    previous = stern_poly(t, alpha(k, 2).value, order=order)
    for n in range(3, 3 + max_iterations):
        current = stern_poly(t, alpha(k, n).value, order=order)
        if current == previous:
            return current
        previous = current
    raise NonConvergence(
        f"truncations at order {order} did not stabilize within {max_iterations} iterations"
    )


def h_series(params: Params, order: int, max_iterations: int = DEFAULT_MAX_ITERATIONS) -> TruncatedSeries:
    """First `order` coefficients of the limit series, computed to stabilization."""
    _require_int("order", order, 1)
    _require_int("max_iterations", max_iterations, 1)
    poly = _h_poly(params, order, max_iterations)
    coeffs = [0] * order
    for e, c in poly:
        coeffs[e] = c
    if coeffs[0] != 1 or any(c not in (0, 1) for c in coeffs):
        raise InternalInvariant("limit series truncation must have 0/1 coefficients and lead with 1")
    return TruncatedSeries(t=params.t, k=params.k, order=order, coeffs=tuple(coeffs))


def agreement_degree(params: Params, n: int) -> int:
    """Largest D such that a(alpha(k,n); z) and a(alpha(k,n+1); z) agree below z**D.

    Undefined when the two polynomials coincide, which happens only at
    (k, n) = (1, 1) where alpha is 1 twice in a row; that call is rejected.
    """
    _require_int("n", n, 1)
    t, k = params.t, params.k
    first = stern_poly(t, alpha(k, n).value)
    second = stern_poly(t, alpha(k, n + 1).value)
    if first == second:
        raise InvalidParameter(
            f"agreement degree undefined: the polynomials at n={n} and n={n + 1} are identical"
        )
    difference = first - second
    return difference.min_exponent


def verify_agreement_monotone(params: Params, n_lo: int = 2, n_hi: int = 7) -> CheckReport:
    """Check that the agreement degree strictly increases over n_lo..n_hi."""
    _require_int("n_lo", n_lo, 1)
    _require_int("n_hi", n_hi, n_lo + 1)
    report = CheckReport(
        suite="agreement_monotone",
        params={"t": params.t, "k": params.k, "n_lo": n_lo, "n_hi": n_hi},
    )
    degrees = [agreement_degree(params, n) for n in range(n_lo, n_hi + 1)]
    for i in range(len(degrees) - 1):
        ok = degrees[i] < degrees[i + 1]
        report.add(
            "agreement_increases",
            {"n": n_lo + i},
            ok,
            f"D({n_lo + i}) = {degrees[i]}, D({n_lo + i + 1}) = {degrees[i + 1]}" if not ok else "",
        )
    return report


def verify_functional_equation(params: Params, order: int,
                               max_iterations: int = DEFAULT_MAX_ITERATIONS) -> CheckReport:
    """Check H(z) = a(2**k - 1; z) H(z**(t**k)) + z**d1 H(z**(t**(2k))) below z**order."""
    from .stern import closed_form_2k, closed_form_2k_minus_1

    _require_int("order", order, 1)
    t, k = params.t, params.k
    tk = params.tk
    report = CheckReport(suite="functional_equation", params={"t": t, "k": k, "order": order})

    series = h_series(params, order, max_iterations)
    report.add("coeffs_in_01", {"order": order}, True)

    h = series.to_poly()
    low = closed_form_2k_minus_1(params)
    d1 = closed_form_2k(params).compose_power(tk).degree
    inner = h.compose_power(tk).truncate(order)
    inner2 = h.compose_power(tk * tk).truncate(order)
    rhs = low.mul_truncated(inner, order) + inner2.shifted(d1).truncate(order)
    same = h == rhs
    detail = "" if same else f"first mismatch at z**{(h - rhs).min_exponent}"
    report.add("functional_equation", {"order": order}, same, detail)
    return report


def verify_mat_system(params: Params, order: int,
                      max_iterations: int = DEFAULT_MAX_ITERATIONS) -> CheckReport:
    """Check both rows of the 2x2 system for (f1, f2) to truncation order.

    Row 1 says f1(z**(t**k)) = f2(z); here f2 is rebuilt from a fresh
    stabilization at the reduced order, so the row also cross-checks that
    stabilizing at two different orders yields consistent coefficients.
    Row 2 is taken denominator-cleared:

        z**d1 * f2(z**(t**k)) = f1(z) - a(2**k - 1; z) * f2(z)

    and the right side is additionally required to vanish below z**d1, which
    is what makes the clearing legitimate.
    """
    from .stern import closed_form_2k, closed_form_2k_minus_1

    _require_int("order", order, 1)
    t, k = params.t, params.k
    tk = params.tk
    report = CheckReport(suite="mat_system", params={"t": t, "k": k, "order": order})

    f1 = _h_poly(params, order, max_iterations)
    reduced = -(-order // tk)  # ceil(order / t**k)
    f2 = _h_poly(params, reduced, max_iterations).compose_power(tk).truncate(order)

    row1_lhs = f1.compose_power(tk).truncate(order)
    same1 = row1_lhs == f2
    report.add(
        "row1_substitution",
        {"order": order},
        same1,
        "" if same1 else f"first mismatch at z**{(row1_lhs - f2).min_exponent}",
    )

    low = closed_form_2k_minus_1(params)
    d1 = closed_form_2k(params).compose_power(tk).degree
    remainder = f1 - low.mul_truncated(f2, order)
    vanish = remainder.truncate(min(d1, order)).is_zero
    report.add(
        "row2_low_order_vanishes",
        {"order": order, "d1": d1},
        vanish,
        "" if vanish else f"coefficient below z**{d1} survives at z**{remainder.min_exponent}",
    )

    row2_lhs = f1.compose_power(tk * tk).truncate(order)  # f2(z**(t**k)) = H(z**(t**(2k)))
    row2_lhs = row2_lhs.shifted(d1).truncate(order)
    same2 = row2_lhs == remainder
    report.add(
        "row2_cleared",
        {"order": order, "d1": d1},
        same2,
        "" if same2 else f"first mismatch at z**{(row2_lhs - remainder).min_exponent}",
    )
    return report


def eval_series_certified(params: Params, point: Fraction, order: int,
                          max_iterations: int = DEFAULT_MAX_ITERATIONS) -> RationalInterval:
    """Rational interval certain to contain the limit series value at `point`.

    The partial sum S of the first `order` terms is exact; the tail is
    bounded by sum of |point|**i for i >= order since every coefficient is
    0 or 1.  For positive points the omitted terms are nonnegative, so the
    enclosure is [S, S + tail]; for negative points it widens to
    [S - tail, S + tail].
    """
    point = Fraction(point)
    if not 0 < abs(point) < 1:
        raise AlphaOutOfRange(f"evaluation point must satisfy 0 < |alpha| < 1, got {point}")
    _require_int("order", order, 1)
    coeffs = h_series(params, order, max_iterations).coeffs
    total = Fraction(0)
    power = Fraction(1)
    for c in coeffs:
        if c:
            total += c * power
        power *= point
    tail = abs(point) ** order / (1 - abs(point))
    if point > 0:
        return RationalInterval(total, total + tail)
    return RationalInterval(total - tail, total + tail)
