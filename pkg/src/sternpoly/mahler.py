"""The 2x2 matrix system behind the limit series functional equation.

With f1(z) = H(z) and f2(z) = H(z**(t**k)) the functional equation reads

    (f1, f2) at z**(t**k)  =  A(z) * (f1, f2) at z,
    A(z) = B(z) / a(2**k; z**(t**k)),
    B(z) = [[0,  a(2**k; z**(t**k))],
            [1, -a(2**k - 1; z)]].

The denominator is the single monomial z**d1, so A has its only pole at the
origin.  Iterating the system produces the polynomial matrix products

    G(n; z) = B(z**(t**((n-1)k))) * ... * B(z**(t**k)) * B(z),

which satisfy entrywise recurrences (multiplying one more factor on the
left), have constant terms (0, 0, (-1)**(n-1), -(-1)**(n-1)) in the order
(11, 12, 21, 22), and determinant (-1)**n * z**(d1 + ... + dn).

At z = 1 every factor collapses to the integer matrix [[0, 1], [1, -k]], so
G(n; 1) = [[0, 1], [1, -k]]**n obeys the linear recurrence with coefficient
-k whose characteristic roots are

    gamma = (sqrt(k*k + 4) - k) / 2,   delta = -(sqrt(k*k + 4) + k) / 2,

with gamma * delta = -1, gamma + delta = -k, 0 < gamma < 1 < |delta|; each
entry fits c * gamma**n + d * delta**n with constants solved exactly from
levels 1 and 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .contfrac import degree_ledger
from .errors import InternalInvariant, InvalidParameter, PrecisionTooLow
from .poly import SparsePoly
from .report import CheckReport, decimal_str
from .stern import Params, _require_int, closed_form_2k, closed_form_2k_minus_1

DEFAULT_PRECISION = 60

IntMatrix = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class GMatrix:
    """Level-n product of the system matrices, with polynomial entries."""

    level: int
    t: int
    k: int
    g11: SparsePoly
    g12: SparsePoly
    g21: SparsePoly
    g22: SparsePoly

    def entries(self) -> tuple[SparsePoly, SparsePoly, SparsePoly, SparsePoly]:
        return (self.g11, self.g12, self.g21, self.g22)

    def at_one(self) -> IntMatrix:
        return (
            (self.g11.value_at_one(), self.g12.value_at_one()),
            (self.g21.value_at_one(), self.g22.value_at_one()),
        )

    def to_json_obj(self) -> dict:
        return {
            "n": str(self.level),
            "g": [
                [self.g11.to_json_obj(), self.g12.to_json_obj()],
                [self.g21.to_json_obj(), self.g22.to_json_obj()],
            ],
        }


@dataclass(frozen=True)
class SpectralFit:
    """Characteristic roots at z = 1 and the per-entry closed-form constants."""

    k: int
    precision: int
    gamma: Fraction
    delta: Fraction
    c: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    d: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    residual: Fraction

    def to_json_obj(self) -> dict:
        digits = self.precision
        return {
            "k": str(self.k),
            "gamma": decimal_str(self.gamma, digits),
            "delta": decimal_str(self.delta, digits),
            "c": [[decimal_str(x, digits) for x in row] for row in self.c],
            "d": [[decimal_str(x, digits) for x in row] for row in self.d],
            "residual": decimal_str(self.residual, digits),
        }


def _b_factor(params: Params, stride: int) -> GMatrix:
    """B(z**stride): the system matrix with z replaced by z**stride."""
    monomial = closed_form_2k(params).compose_power(params.tk * stride)
    low = closed_form_2k_minus_1(params).compose_power(stride)
    return GMatrix(
        level=1,
        t=params.t,
        k=params.k,
        g11=SparsePoly.zero(),
        g12=monomial,
        g21=SparsePoly.one(),
        g22=-low,
    )


def b_matrix(params: Params) -> GMatrix:
    """The level-1 matrix B(z)."""
    return _b_factor(params, 1)


def a_matrix_pole_check(params: Params) -> CheckReport:
    """Confirm the cleared denominator is the monomial z**d1, so the scaled
    system matrix is polynomial away from a single pole at the origin."""
    t, k = params.t, params.k
    report = CheckReport(suite="a_matrix_pole", params={"t": t, "k": k})
    denominator = closed_form_2k(params).compose_power(params.tk)
    ledger = degree_ledger(params, 1)
    ok = (
        denominator.is_monomial
        and denominator.terms[0][1] == 1
        and denominator.degree == ledger.d[0]
    )
    report.add(
        "denominator_is_monomial_d1",
        {"d1": ledger.d[0]},
        ok,
        "" if ok else f"denominator is {denominator}",
    )
    return report


def g_product(params: Params, n: int) -> GMatrix:
    """G(n; z) assembled by explicit 2x2 matrix multiplication of the factors."""
    _require_int("n", n, 1)
    acc = b_matrix(params)
    stride = 1
    for _ in range(1, n):
        stride *= params.tk
        fac = _b_factor(params, stride)
        acc = GMatrix(
            level=acc.level + 1,
            t=params.t,
            k=params.k,
            g11=fac.g11 * acc.g11 + fac.g12 * acc.g21,
            g12=fac.g11 * acc.g12 + fac.g12 * acc.g22,
            g21=fac.g21 * acc.g11 + fac.g22 * acc.g21,
            g22=fac.g21 * acc.g12 + fac.g22 * acc.g22,
        )
    return acc


def g_recur(params: Params, n: int) -> GMatrix:
    """G(n; z) via the entrywise recurrences, one substitution stride per level.

    Going from level n to n+1 (new factor on the left):
        g11 <- a(2**k; z**(t**((n+1)k))) * g21
        g12 <- a(2**k; z**(t**((n+1)k))) * g22
        g21 <- g11_old - a(2**k - 1; z**(t**(nk))) * g21
        g22 <- g12_old - a(2**k - 1; z**(t**(nk))) * g22
    """
    _require_int("n", n, 1)
    tk = params.tk
    monomial_base = closed_form_2k(params)
    low_base = closed_form_2k_minus_1(params)
    acc = b_matrix(params)
    stride = 1
    for level in range(1, n):
        stride *= tk
        top = monomial_base.compose_power(stride * tk)  # a(2**k; z**(t**((n+1)k)))
        low = low_base.compose_power(stride)  # a(2**k - 1; z**(t**(nk)))
        acc = GMatrix(
            level=level + 1,
            t=params.t,
            k=params.k,
            g11=top * acc.g21,
            g12=top * acc.g22,
            g21=acc.g11 - low * acc.g21,
            g22=acc.g12 - low * acc.g22,
        )
    return acc


def verify_g_construction(params: Params, n_max: int) -> CheckReport:
    """Product route and recurrence route must agree exactly at every level."""
    _require_int("n_max", n_max, 1)
    report = CheckReport(
        suite="g_construction", params={"t": params.t, "k": params.k, "n_max": n_max}
    )
    for n in range(1, n_max + 1):
        via_product = g_product(params, n)
        via_recur = g_recur(params, n)
        same = via_product.entries() == via_recur.entries()
        report.add(
            "product_equals_recurrence",
            {"n": n},
            same,
            "" if same else "entrywise mismatch between the two constructions",
        )
    return report


def g_constant_terms(params: Params, n_max: int) -> CheckReport:
    """Constant terms: g11(0) = g12(0) = 0, g21(0) = -g22(0) = (-1)**(n-1)."""
    _require_int("n_max", n_max, 1)
    report = CheckReport(
        suite="g_constant_terms", params={"t": params.t, "k": params.k, "n_max": n_max}
    )
    for n in range(1, n_max + 1):
        g = g_recur(params, n)
        expected = 1 if (n - 1) % 2 == 0 else -1
        got = (
            g.g11.constant_term,
            g.g12.constant_term,
            g.g21.constant_term,
            g.g22.constant_term,
        )
        ok = got == (0, 0, expected, -expected)
        report.add(
            "constant_terms",
            {"n": n},
            ok,
            "" if ok else f"constant terms {got}, expected (0, 0, {expected}, {-expected})",
        )
    return report


def g_nonvanishing(params: Params, n_max: int) -> CheckReport:
    """g21 and g22 are nonzero for n >= 1; g12 for n >= 1 as well (monomial at
    n = 1, propagated by the recurrence afterwards); g11 vanishes only at n = 1."""
    _require_int("n_max", n_max, 1)
    report = CheckReport(
        suite="g_nonvanishing", params={"t": params.t, "k": params.k, "n_max": n_max}
    )
    for n in range(1, n_max + 1):
        g = g_recur(params, n)
        ok = bool(g.g21) and bool(g.g22) and bool(g.g12) and (bool(g.g11) == (n >= 2))
        report.add(
            "nonvanishing",
            {"n": n},
            ok,
            "" if ok else f"zero pattern {[p.is_zero for p in g.entries()]}",
        )
    return report


def det_check(params: Params, n_max: int) -> CheckReport:
    """Determinant of G(n; z) is (-1)**n * z**(d1 + ... + dn) exactly."""
    _require_int("n_max", n_max, 1)
    report = CheckReport(suite="g_determinant", params={"t": params.t, "k": params.k, "n_max": n_max})
    ledger = degree_ledger(params, n_max)
    exponent_sum = 0
    for n in range(1, n_max + 1):
        exponent_sum += ledger.d[n - 1]
        g = g_recur(params, n)
        det = g.g11 * g.g22 - g.g12 * g.g21
        expected = SparsePoly.monomial(exponent_sum, 1 if n % 2 == 0 else -1)
        ok = det == expected
        report.add(
            "determinant",
            {"n": n},
            ok,
            "" if ok else f"got {det}, expected {expected}",
        )
    return report


# -- the z = 1 specialization ------------------------------------------------


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def g_at_one(params: Params, n: int) -> IntMatrix:
    """G(n; 1) as exact integers: the n-th power of [[0, 1], [1, -k]]."""
    _require_int("n", n, 1)
    base: IntMatrix = ((0, 1), (1, -params.k))
    acc = base
    for _ in range(n - 1):
        acc = _mat_mul(acc, base)
    return acc


def _sqrt_fraction(m: int, digits: int) -> Fraction:
    """Floor approximation of sqrt(m) carrying `digits` decimal digits."""
    scale = 10**digits
    return Fraction(isqrt(m * scale * scale), scale)


def _surd_mul(x: tuple[Fraction, Fraction], y: tuple[Fraction, Fraction], m: int):
    """Product in Q[sqrt(m)] on (rational, coefficient-of-sqrt) pairs."""
    return (x[0] * y[0] + x[1] * y[1] * m, x[0] * y[1] + x[1] * y[0])


def g_at_one_spectral(params: Params, n_max: int,
                      precision: int = DEFAULT_PRECISION) -> tuple[CheckReport, SpectralFit]:
    """Verify the z = 1 recurrence and fit each entry to the two root powers.

    The integer matrices G(n; 1) are computed by exact matrix powers, checked
    against the -k linear recurrence, and (for small n) against the value at
    one of the symbolically built G(n; z).  The roots are approximated to
    `precision` decimal digits; the identities gamma * delta = -1 and
    gamma + delta = -k are verified exactly in Q[sqrt(k*k + 4)], not on the
    approximations.  The fit residual is relative and must stay below
    10**-(precision // 2).
    """
    _require_int("n_max", n_max, 3)
    _require_int("precision", precision, 2)
    k = params.k
    report = CheckReport(
        suite="g_at_one_spectral",
        params={"t": params.t, "k": k, "n_max": n_max, "precision": precision},
    )

    base: IntMatrix = ((0, 1), (1, -k))
    mats: list[IntMatrix] = [base]
    for _ in range(n_max - 1):
        mats.append(_mat_mul(mats[-1], base))

    recurrence_ok = True
    first_bad = None
    for n in range(2, n_max):  # mats[i] is G(i+1; 1)
        expected = tuple(
            tuple(-k * mats[n - 1][r][c] + mats[n - 2][r][c] for c in range(2)) for r in range(2)
        )
        if mats[n] != expected:
            recurrence_ok = False
            first_bad = n + 1
            break
    report.add(
        "integer_recurrence",
        {"n_max": n_max},
        recurrence_ok,
        "" if recurrence_ok else f"recurrence with coefficient -{k} fails at n = {first_bad}",
    )

    symbolic_levels = min(n_max, 6)
    symbolic_ok = all(
        g_recur(params, n).at_one() == mats[n - 1] for n in range(1, symbolic_levels + 1)
    )
    report.add(
        "matches_symbolic_at_one",
        {"n_max": symbolic_levels},
        symbolic_ok,
        "" if symbolic_ok else "matrix powers disagree with symbolic evaluation at z = 1",
    )

    discriminant = k * k + 4
    root = _sqrt_fraction(discriminant, precision)
    gamma = (root - k) / 2
    delta = -(root + k) / 2

    # Exact root algebra on a + b*sqrt(k*k + 4) pairs, independent of `root`.
    gamma_surd = (Fraction(-k, 2), Fraction(1, 2))
    delta_surd = (Fraction(-k, 2), Fraction(-1, 2))
    product = _surd_mul(gamma_surd, delta_surd, discriminant)
    total = (gamma_surd[0] + delta_surd[0], gamma_surd[1] + delta_surd[1])
    identities_ok = product == (Fraction(-1), Fraction(0)) and total == (Fraction(-k), Fraction(0))
    report.add(
        "root_identities_exact",
        {"k": k},
        identities_ok,
        "" if identities_ok else f"product {product}, sum {total}",
    )

    in_range = 0 < gamma < 1 < abs(delta)
    report.add(
        "roots_in_range",
        {"k": k},
        in_range,
        "" if in_range else f"gamma = {gamma}, delta = {delta}",
    )

    # Solve c * gamma**n + d * delta**n = entry for n = 1, 2 by Cramer's rule.
    det = gamma * delta * delta - gamma * gamma * delta
    if det == 0:
        raise PrecisionTooLow("root separation lost at this precision")
    c_rows = []
    d_rows = []
    for r in range(2):
        c_row = []
        d_row = []
        for col in range(2):
            v1 = Fraction(mats[0][r][col])
            v2 = Fraction(mats[1][r][col])
            c_row.append((v1 * delta * delta - v2 * delta) / det)
            d_row.append((v2 * gamma - v1 * gamma * gamma) / det)
        c_rows.append(tuple(c_row))
        d_rows.append(tuple(d_row))
    c_fit = (c_rows[0], c_rows[1])
    d_fit = (d_rows[0], d_rows[1])

    tolerance = Fraction(1, 10 ** (precision // 2))
    residual = Fraction(0)
    gamma_pow, delta_pow = Fraction(1), Fraction(1)
    for n in range(1, n_max + 1):
        gamma_pow *= gamma
        delta_pow *= delta
        for r in range(2):
            for col in range(2):
                predicted = c_fit[r][col] * gamma_pow + d_fit[r][col] * delta_pow
                actual = mats[n - 1][r][col]
                err = abs(predicted - actual) / max(1, abs(actual))
                if err > residual:
                    residual = err
    fit_ok = residual <= tolerance
    report.add(
        "closed_form_fit",
        {"n_max": n_max, "precision": precision},
        fit_ok,
        f"relative residual {decimal_str(residual, min(precision, 40))}",
    )
    if not fit_ok:
        raise PrecisionTooLow(
            f"fit residual {decimal_str(residual, 20)} exceeds 10**-{precision // 2}"
        )

    fit = SpectralFit(
        k=k,
        precision=precision,
        gamma=gamma,
        delta=delta,
        c=c_fit,
        d=d_fit,
        residual=residual,
    )
    return report, fit
