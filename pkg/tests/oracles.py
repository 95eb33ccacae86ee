"""Independent reference implementations used to pin expected values.

Everything here follows the defining recurrences literally and slowly and
shares no code with the package under test.
"""

from __future__ import annotations

from fractions import Fraction


def naive_stern_terms(t: int, n: int) -> dict[int, int]:
    """Exponent -> coefficient map for a(n; z), by direct top-down recursion."""
    cache: dict[int, dict[int, int]] = {0: {}, 1: {0: 1}}

    def rec(m: int) -> dict[int, int]:
        if m in cache:
            return cache[m]
        if m % 2 == 0:
            result = {t * e + 1: c for e, c in rec(m // 2).items()}
        else:
            result = {}
            for part in (rec(m // 2), rec(m // 2 + 1)):
                for e, c in part.items():
                    result[t * e] = result.get(t * e, 0) + c
        cache[m] = result
        return result

    return rec(n)


def diatomic_upto(limit: int) -> list[int]:
    """Diatomic sequence values 0..limit by the defining recurrence."""
    values = [0, 1]
    for n in range(2, limit + 1):
        if n % 2 == 0:
            values.append(values[n // 2])
        else:
            values.append(values[n // 2] + values[n // 2 + 1])
    return values[: limit + 1]


def nested_cf_value(b0: Fraction, terms: list[tuple[Fraction, Fraction]]) -> Fraction:
    """Finite continued fraction value by bottom-up nesting, no p/q recurrence."""
    acc = Fraction(0)
    for a, b in reversed(terms):
        acc = a / (b + acc)
    return b0 + acc
