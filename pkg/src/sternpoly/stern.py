"""Type 1 Stern polynomials and the index sequence along which they converge.

For a fixed base t >= 2 the polynomials a(n; z) follow

    a(0; z) = 0,   a(1; z) = 1,
    a(2n; z)   = z * a(n; z**t),
    a(2n+1; z) = a(n+1; z**t) + a(n; z**t),

which forces every coefficient to be 0 or 1.  Evaluating at z = 1 collapses
the substitutions and leaves the classic diatomic sequence (OEIS A002487),
so the number of terms of a(n; z) equals that sequence at n.

The indices of interest here are

    alpha(k, n) = (2**(k*n) - (-1)**n) / (2**k + 1),

whose binary expansions repeat a k-bit block; along them the polynomials
satisfy an exact three-term recurrence with the closed-form polynomials at
2**k and 2**k - 1 as coefficients, and converge coefficientwise to a limit
series handled in the `series` module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariant, InvalidParameter
from .poly import SparsePoly
from .report import CheckReport


def _require_int(name: str, value, minimum: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise InvalidParameter(f"{name} must be an integer >= {minimum}, got {value!r}")


@dataclass(frozen=True)
class Params:
    """Problem parameters: polynomial base t >= 2 and block width k >= 1."""

    t: int
    k: int

    def __post_init__(self):
        _require_int("t", self.t, 2)
        _require_int("k", self.k, 1)

    @property
    def tk(self) -> int:
        """The substitution stride t**k."""
        return self.t**self.k


@dataclass(frozen=True)
class AlphaIndex:
    """One member of the index sequence, with its defining k and n kept."""

    k: int
    n: int
    value: int


def alpha(k: int, n: int) -> AlphaIndex:
    """Exact index (2**(k*n) - (-1)**n) / (2**k + 1); divisibility is checked."""
    _require_int("k", k, 1)
    _require_int("n", n, 0)
    numerator = 2 ** (k * n) - (-1) ** n
    value, remainder = divmod(numerator, 2**k + 1)
    if remainder:
        raise InternalInvariant(f"2**({k}*{n}) - (-1)**{n} is not divisible by 2**{k} + 1")
    return AlphaIndex(k=k, n=n, value=value)


def stern_poly(t: int, n: int, order: int | None = None) -> SparsePoly:
    """Polynomial a(n; z) for base t; with `order` set, truncated below z**order.

    Runs bottom-up along the binary expansion of n carrying the pair
    (a(m; w), a(m+1; w)) at w = z**(t**level), so the work is O(bit length)
    polynomial operations instead of a tree of recursive calls.  Truncation,
    when requested, is applied after every step; no operation ever lowers an
    exponent, so dropped terms can never influence the kept ones.
    """
    _require_int("t", t, 2)
    _require_int("n", n, 0)
    if order is not None:
        _require_int("order", order, 1)
    if n == 0:
        return SparsePoly.zero()
    length = n.bit_length()
    powers = [t**j for j in range(length)]
    u, v = SparsePoly.zero(), SparsePoly.one()
    for j in reversed(range(length)):
        if (n >> j) & 1:
            u, v = u + v, v.shifted(powers[j])
        else:
            u, v = u.shifted(powers[j]), u + v
        if order is not None:
            u = u.truncate(order)
            v = v.truncate(order)
    return u


def stern_value_at_one(t: int, n: int) -> int:
    """Value a(n; 1): the diatomic sequence, via the same pairwise descent."""
    _require_int("t", t, 2)
    _require_int("n", n, 0)
    u, v = 0, 1
    for j in reversed(range(n.bit_length())):
        if (n >> j) & 1:
            u, v = u + v, v
        else:
            u, v = u, u + v
    return u


def closed_form_2k(params: Params) -> SparsePoly:
    """a(2**k; z) = z**((t**k - 1)/(t - 1)), a single monomial."""
    t, k = params.t, params.k
    e, r = divmod(t**k - 1, t - 1)
    if r:
        raise InternalInvariant(f"(t**k - 1) not divisible by (t - 1) for t={t}, k={k}")
    return SparsePoly.monomial(e)


def closed_form_2k_minus_1(params: Params) -> SparsePoly:
    """a(2**k - 1; z) = sum over i=1..k of z**((t**k - t**i)/(t - 1)).

    The i = k summand is the constant 1; there are exactly k terms.
    """
    t, k = params.t, params.k
    pairs = []
    for i in range(1, k + 1):
        e, r = divmod(t**k - t**i, t - 1)
        if r:
            raise InternalInvariant(f"(t**k - t**{i}) not divisible by (t - 1) for t={t}, k={k}")
        pairs.append((e, 1))
    return SparsePoly(pairs)


def verify_three_term(params: Params, n_max: int) -> CheckReport:
    """Check, for 1 <= n < n_max, the exact recurrence along the index sequence:

        a(alpha(k, n+1); z) = a(2**k - 1; z) * a(alpha(k, n); z**(t**k))
                            + a(2**k; z**(t**k)) * a(alpha(k, n-1); z**(t**(2k)))

    Both sides are computed from the defining recurrence alone (no closed
    forms), so the check does not assume what it is trying to establish.
    """
    _require_int("n_max", n_max, 2)
    t, k = params.t, params.k
    tk = params.tk
    report = CheckReport(
        suite="three_term", params={"t": t, "k": k, "n_max": n_max}
    )
    low = stern_poly(t, 2**k - 1)
    high = stern_poly(t, 2**k).compose_power(tk)
    for n in range(1, n_max):
        lhs = stern_poly(t, alpha(k, n + 1).value)
        rhs = (
            low * stern_poly(t, alpha(k, n).value).compose_power(tk)
            + high * stern_poly(t, alpha(k, n - 1).value).compose_power(tk * tk)
        )
        same = lhs == rhs
        detail = "" if same else f"difference has {(lhs - rhs).term_count} terms"
        report.add("three_term", {"n": n}, same, detail)
    return report
