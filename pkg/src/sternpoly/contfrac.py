"""Generalized continued fractions built from the Stern polynomial recurrence.

The three-term recurrence along the index sequence unrolls into a continued
fraction for the ratio of consecutive polynomials, and in the limit for
H(z) / H(z**(t**k)):

    b0(z) + a1(z) / (b1(z) + a2(z) / (b2(z) + ...))

with  b0(z) = a(2**k - 1; z),
      an(z) = a(2**k; z**(t**(n*k)))     (a single monomial z**d_n),
      bn(z) = a(2**k - 1; z**(t**(n*k))) (k terms, constant term 1),
      d_n  = t**(n*k) * (t**k - 1) / (t - 1).

Convergents follow the classical recurrence p_m = b_m p_{m-1} + a_m p_{m-2}
(same for q), seeded by p_{-1} = 1, q_{-1} = 0, p_0 = b0, q_0 = 1, and turn
out to be exactly the Stern polynomials again:

    p_m = a(alpha(k, m+2); z),   q_m = a(alpha(k, m+1); z**(t**k)).

A degree ledger tracks d_n together with the alternating sums
D_n = d_n - d_{n-1} + ... +- d_1 and the margins
D_n - deg bn > 0 which make the z = 1/2 specialization below work.

At z = 1/2 every partial numerator is an exact power of 1/2, so scaling
level n by 2**D_n is an equivalence transformation (it preserves every
convergent) that makes all partial numerators equal to 1 and every partial
denominator a positive integer: the continued fraction becomes regular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AlphaOutOfRange,
    CapExceeded,
    DivisionByZero,
    InternalInvariant,
    InvalidParameter,
)
from .poly import SparsePoly
from .report import CheckReport, rational_str
from .stern import (
    Params,
    _require_int,
    alpha,
    closed_form_2k,
    closed_form_2k_minus_1,
    stern_poly,
)

DEFAULT_BIT_CAP = 1 << 24


@dataclass(frozen=True)
class CFTerm:
    """Level n >= 1 of the continued fraction: partial numerator and denominator."""

    level: int
    a: SparsePoly
    b: SparsePoly


@dataclass(frozen=True)
class ConvergentPair:
    """Numerator and denominator of the m-th convergent (m starts at 0)."""

    index: int
    p: SparsePoly
    q: SparsePoly


@dataclass(frozen=True)
class DegreeLedger:
    """Exponent bookkeeping for levels 1..n: d, alternating sums D, margins.

    Tuples are indexed from level 1, i.e. entry [0] belongs to n = 1.
    The margin at level n is D_n minus the degree of bn(z), strictly positive
    for all n, and bounded below by t**(n*k) - t**((n-1)*k)*(t**k - 1)/(t - 1).
    """

    d: tuple[int, ...]
    alternating: tuple[int, ...]
    margin: tuple[int, ...]


def degree_ledger(params: Params, n_max: int) -> DegreeLedger:
    """Compute d_n, D_n and margins for 1 <= n <= n_max, checking positivity."""
    _require_int("n_max", n_max, 1)
    t, k = params.t, params.k
    tk = params.tk
    base = closed_form_2k(params).degree  # (t**k - 1)/(t - 1)
    low_degree = closed_form_2k_minus_1(params).degree  # (t**k - t)/(t - 1)
    d: list[int] = []
    alternating: list[int] = []
    margin: list[int] = []
    stride = 1
    for n in range(1, n_max + 1):
        stride *= tk  # t**(n*k)
        d.append(stride * base)
        alternating.append(d[-1] - (alternating[-1] if alternating else 0))
        margin.append(alternating[-1] - stride * low_degree)
        if margin[-1] <= 0:
            raise InternalInvariant(f"degree margin at level {n} is {margin[-1]}, expected > 0")
    return DegreeLedger(d=tuple(d), alternating=tuple(alternating), margin=tuple(margin))


def verify_degree_ledger(params: Params, n_max: int) -> CheckReport:
    """Check margin positivity and its explicit lower bound at every level:

        margin_n >= t**(n*k) - t**((n-1)*k) * (t**k - 1)/(t - 1) > 0.
    """
    _require_int("n_max", n_max, 1)
    t, k = params.t, params.k
    tk = params.tk
    report = CheckReport(suite="degree_ledger", params={"t": t, "k": k, "n_max": n_max})
    ledger = degree_ledger(params, n_max)
    base = closed_form_2k(params).degree  # (t**k - 1)/(t - 1)
    for n in range(1, n_max + 1):
        margin = ledger.margin[n - 1]
        bound = tk**n - tk ** (n - 1) * base
        ok = bound > 0 and margin >= bound
        report.add(
            "margin_lower_bound",
            {"n": n},
            ok,
            "" if ok else f"margin {margin}, bound {bound}",
        )
    return report


def cf_terms(params: Params, depth: int) -> tuple[SparsePoly, list[CFTerm]]:
    """Leading term b0 and levels 1..depth of the continued fraction."""
    _require_int("depth", depth, 0)
    k = params.k
    tk = params.tk
    b0 = closed_form_2k_minus_1(params)
    a_base = closed_form_2k(params)
    ledger = degree_ledger(params, depth) if depth else None
    terms: list[CFTerm] = []
    stride = 1
    for n in range(1, depth + 1):
        stride *= tk
        a_n = a_base.compose_power(stride)
        b_n = b0.compose_power(stride)
        if not (a_n.is_monomial and a_n.degree == ledger.d[n - 1]):
            raise InternalInvariant(f"partial numerator at level {n} is not z**d_{n}")
        if b_n.term_count != k or b_n.constant_term != 1:
            raise InternalInvariant(f"partial denominator at level {n} malformed")
        terms.append(CFTerm(level=n, a=a_n, b=b_n))
    return b0, terms


def convergents(b0: SparsePoly, terms: list[CFTerm]) -> list[ConvergentPair]:
    """Convergent numerators and denominators p_m, q_m for m = 0..len(terms)."""
    p_prev, q_prev = SparsePoly.one(), SparsePoly.zero()
    p_cur, q_cur = b0, SparsePoly.one()
    out = [ConvergentPair(index=0, p=p_cur, q=q_cur)]
    for m, term in enumerate(terms, start=1):
        p_cur, p_prev = term.b * p_cur + term.a * p_prev, p_cur
        q_cur, q_prev = term.b * q_cur + term.a * q_prev, q_cur
        out.append(ConvergentPair(index=m, p=p_cur, q=q_cur))
    return out


def verify_cf1(params: Params, n_max: int) -> CheckReport:
    """Check that convergents recover the Stern polynomials exactly.

    For 0 <= m <= n_max - 2:
        p_m = a(alpha(k, m+2); z)
        q_m = a(alpha(k, m+1); z**(t**k))
    plus the cross-multiplied ratio identity p_m * q'_m = q_m * p'_m where
    p', q' are the independently computed Stern polynomials, avoiding any
    rational-function simplification.
    """
    _require_int("n_max", n_max, 2)
    t, k = params.t, params.k
    tk = params.tk
    report = CheckReport(suite="cf_convergents", params={"t": t, "k": k, "n_max": n_max})
    b0, terms = cf_terms(params, n_max - 2)
    pairs = convergents(b0, terms)
    for pair in pairs:
        m = pair.index
        expected_p = stern_poly(t, alpha(k, m + 2).value)
        expected_q = stern_poly(t, alpha(k, m + 1).value).compose_power(tk)
        ok_p = pair.p == expected_p
        ok_q = pair.q == expected_q
        ok_cross = pair.p * expected_q == pair.q * expected_p
        passed = ok_p and ok_q and ok_cross
        detail = ""
        if not passed:
            bad = [name for name, ok in (("p", ok_p), ("q", ok_q), ("cross", ok_cross)) if not ok]
            detail = f"mismatch in {', '.join(bad)}"
        report.add("convergent_matches_stern", {"m": m}, passed, detail)

    # p_m q_{m-1} - p_{m-1} q_m = (-1)**(m-1) * a_1 * ... * a_m, a signed monomial.
    det_expected_exp = 0
    for m in range(1, len(pairs)):
        det = pairs[m].p * pairs[m - 1].q - pairs[m - 1].p * pairs[m].q
        det_expected_exp += terms[m - 1].a.degree
        sign = 1 if (m - 1) % 2 == 0 else -1
        expected = SparsePoly.monomial(det_expected_exp, sign)
        ok = det == expected
        report.add(
            "convergent_determinant",
            {"m": m},
            ok,
            "" if ok else f"got {det}, expected {expected}",
        )
    return report


def regular_cf_transform(params: Params, depth: int,
                         bit_cap: int = DEFAULT_BIT_CAP) -> list[tuple[int, int]]:
    """Specialize levels 1..depth at z = 1/2 and rescale to a regular form.

    Scaling level n by 2**D_n turns the partial numerator into exactly 1 and
    the partial denominator into the positive integer
    2**D_n * b_n(1/2) = sum over exponents e of bn of 2**(D_n - t**(n*k) * e);
    positivity of all those exponents is precisely the ledger margin.
    Returns the list of (numerator, denominator) = (1, integer) pairs.

    The alternating sums D_n grow like t**(n*k); `bit_cap` bounds the bit
    length of the integers this is allowed to build.
    """
    _require_int("depth", depth, 1)
    _require_int("bit_cap", bit_cap, 1)
    t, k = params.t, params.k
    tk = params.tk
    ledger = degree_ledger(params, depth)
    if max(ledger.alternating) > bit_cap:
        raise CapExceeded(
            f"2**D_{depth} would need {max(ledger.alternating)} bits, cap is {bit_cap}"
        )
    low = closed_form_2k_minus_1(params)
    out: list[tuple[int, int]] = []
    stride = 1
    for n in range(1, depth + 1):
        stride *= tk
        big_d = ledger.alternating[n - 1]
        # Numerator: 2**(D_n + D_{n-1}) * a_n(1/2) = 2**(D_n + D_{n-1} - d_n) = 1.
        previous_d = ledger.alternating[n - 2] if n >= 2 else 0
        if big_d + previous_d != ledger.d[n - 1]:
            raise InternalInvariant(f"alternating sums inconsistent at level {n}")
        denominator = 0
        for e, _ in low.terms:
            shift = big_d - stride * e
            if shift < 0:
                raise InternalInvariant(f"margin violated at level {n}: negative shift {shift}")
            denominator += 1 << shift
        out.append((1, denominator))
    return out


def eval_cf_at_rational(params: Params, point: Fraction, depth: int) -> list[Fraction]:
    """Exact convergent values at a rational point, depths 0..depth.

    Depth 0 is just b0 evaluated; depth m uses levels 1..m.  Raises
    DivisionByZero if a convergent denominator vanishes at the point.
    """
    point = Fraction(point)
    if not 0 < abs(point) < 1:
        raise AlphaOutOfRange(f"evaluation point must satisfy 0 < |alpha| < 1, got {point}")
    _require_int("depth", depth, 0)
    b0, terms = cf_terms(params, depth)
    values = [(term.a.evaluate(point), term.b.evaluate(point)) for term in terms]
    return _rational_convergents(b0.evaluate(point), values)


def _rational_convergents(b0: Fraction, terms: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Classical p/q recurrence over exact rationals; flags vanishing q."""
    p_prev, q_prev = Fraction(1), Fraction(0)
    p_cur, q_cur = b0, Fraction(1)
    out = [p_cur / q_cur]
    for m, (a_val, b_val) in enumerate(terms, start=1):
        p_cur, p_prev = b_val * p_cur + a_val * p_prev, p_cur
        q_cur, q_prev = b_val * q_cur + a_val * q_prev, q_cur
        if q_cur == 0:
            raise DivisionByZero(f"convergent denominator vanished at depth {m}")
        out.append(p_cur / q_cur)
    return out


def verify_regular_transform(params: Params, depth: int,
                             bit_cap: int = DEFAULT_BIT_CAP) -> CheckReport:
    """Check the z = 1/2 regular form: shape, integrality, value preservation.

    The transformed and untransformed continued fractions must produce the
    same convergent value at every depth, since an equivalence transformation
    preserves convergents index by index; all comparisons are exact rationals.
    """
    _require_int("depth", depth, 1)
    t, k = params.t, params.k
    half = Fraction(1, 2)
    report = CheckReport(suite="regular_transform", params={"t": t, "k": k, "depth": depth})

    regular = regular_cf_transform(params, depth, bit_cap=bit_cap)
    b0, terms = cf_terms(params, depth)
    ledger = degree_ledger(params, depth)

    for n, (num, den) in enumerate(regular, start=1):
        term = terms[n - 1]
        scaled_num = 2 ** ledger.d[n - 1] * term.a.evaluate(half)
        ok_num = num == 1 and scaled_num == 1
        report.add(
            "numerator_is_one",
            {"n": n},
            ok_num,
            "" if ok_num else f"2**d_{n} * a_{n}(1/2) = {scaled_num}",
        )
        scaled_den = 2 ** ledger.alternating[n - 1] * term.b.evaluate(half)
        ok_den = den > 0 and scaled_den == den
        report.add(
            "denominator_is_positive_integer",
            {"n": n},
            ok_den,
            "" if ok_den else f"expected {rational_str(scaled_den)}, stored {den}",
        )

    plain = _rational_convergents(
        b0.evaluate(half), [(term.a.evaluate(half), term.b.evaluate(half)) for term in terms]
    )
    transformed = _rational_convergents(
        b0.evaluate(half), [(Fraction(num), Fraction(den)) for num, den in regular]
    )
    for m, (left, right) in enumerate(zip(plain, transformed)):
        ok = left == right
        report.add(
            "value_preserved",
            {"depth": m},
            ok,
            "" if ok else f"{rational_str(left)} != {rational_str(right)}",
        )
    return report
