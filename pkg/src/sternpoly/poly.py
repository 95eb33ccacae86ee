"""Sparse integer polynomials with arbitrary-precision exponents.

A polynomial is a tuple of (exponent, coefficient) pairs sorted by strictly
increasing exponent with no zero coefficients stored; the zero polynomial is
the empty tuple.  Exponents in this package routinely reach t**(n*k), so both
exponents and coefficients are plain Python ints and are never assumed to fit
a machine word.

Operations that can enlarge a result check a global term cap and raise
CapExceeded past it: a predictable failure beats memory exhaustion when a
caller asks for something doubly exponential.  Instances are immutable, so
everything here is safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .errors import CapExceeded, InvalidParameter

DEFAULT_TERM_CAP = 10**6

_term_cap = DEFAULT_TERM_CAP


def set_term_cap(cap: int) -> None:
    """Set the global bound on the number of stored terms per polynomial."""
    global _term_cap
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
        raise InvalidParameter(f"term cap must be a positive integer, got {cap!r}")
    _term_cap = cap


def get_term_cap() -> int:
    return _term_cap


def _checked(terms: tuple) -> tuple:
    if len(terms) > _term_cap:
        raise CapExceeded(f"result has {len(terms)} terms, cap is {_term_cap}")
    return terms


class SparsePoly:
    """Immutable polynomial in one variable over the integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        for item in terms:
            try:
                e, c = item
            except (TypeError, ValueError):
                raise InvalidParameter(f"term {item!r} is not an (exponent, coefficient) pair")
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise InvalidParameter(f"exponent must be a nonnegative integer, got {e!r}")
            if not isinstance(c, int) or isinstance(c, bool):
                raise InvalidParameter(f"coefficient must be an integer, got {c!r}")
            if c:
                s = acc.get(e, 0) + c
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        self._terms = _checked(tuple(sorted(acc.items())))

    @classmethod
    def _raw(cls, terms: tuple) -> "SparsePoly":
        # Internal fast path: `terms` must already be canonical.
        p = object.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def zero(cls) -> "SparsePoly":
        return cls._raw(())

    @classmethod
    def one(cls) -> "SparsePoly":
        return cls._raw(((0, 1),))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "SparsePoly":
        return cls(((exponent, coefficient),))

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def term_count(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Largest exponent; querying the zero polynomial is an error."""
        if not self._terms:
            raise InvalidParameter("degree of the zero polynomial is undefined")
        return self._terms[-1][0]

    @property
    def min_exponent(self) -> int:
        if not self._terms:
            raise InvalidParameter("minimum exponent of the zero polynomial is undefined")
        return self._terms[0][0]

    @property
    def constant_term(self) -> int:
        if self._terms and self._terms[0][0] == 0:
            return self._terms[0][1]
        return 0

    def coefficient(self, exponent: int) -> int:
        lo, hi = 0, len(self._terms)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._terms[mid][0] < exponent:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self._terms) and self._terms[lo][0] == exponent:
            return self._terms[lo][1]
        return 0

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"SparsePoly({list(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self._terms):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                zpow = "z" if e == 1 else f"z^{e}"
                body = zpow if mag == 1 else f"{mag}*{zpow}"
            if idx == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a:
            return other
        if not b:
            return self
        out = []
        i = j = 0
        la, lb = len(a), len(b)
        while i < la and j < lb:
            ea, ca = a[i]
            eb, cb = b[j]
            if ea < eb:
                out.append(a[i])
                i += 1
            elif ea > eb:
                out.append(b[j])
                j += 1
            else:
                c = ca + cb
                if c:
                    out.append((ea, c))
                i += 1
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return SparsePoly._raw(_checked(tuple(out)))

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return SparsePoly.zero()
        if len(a) * len(b) > 20 * _term_cap:
            raise CapExceeded(
                f"product would form {len(a) * len(b)} term pairs, "
                f"beyond 20x the term cap {_term_cap}"
            )
        if len(a) > len(b):
            a, b = b, a
        acc: dict[int, int] = {}
        for ea, ca in a:
            for eb, cb in b:
                e = ea + eb
                s = acc.get(e, 0) + ca * cb
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        return SparsePoly._raw(_checked(tuple(sorted(acc.items()))))

    def mul_truncated(self, other: "SparsePoly", order: int) -> "SparsePoly":
        """Product with every exponent >= order dropped as it is formed."""
        if not isinstance(order, int) or isinstance(order, bool) or order < 0:
            raise InvalidParameter(f"order must be a nonnegative integer, got {order!r}")
        a, b = self._terms, other._terms
        acc: dict[int, int] = {}
        for ea, ca in a:
            if ea >= order:
                break
            for eb, cb in b:
                e = ea + eb
                if e >= order:
                    break
                s = acc.get(e, 0) + ca * cb
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        return SparsePoly._raw(_checked(tuple(sorted(acc.items()))))

    def shifted(self, offset: int) -> "SparsePoly":
        """Multiply by z**offset, i.e. add `offset` to every exponent."""
        if not isinstance(offset, int) or isinstance(offset, bool) or offset < 0:
            raise InvalidParameter(f"shift offset must be a nonnegative integer, got {offset!r}")
        return SparsePoly._raw(tuple((e + offset, c) for e, c in self._terms))

    def compose_power(self, m: int) -> "SparsePoly":
        """Substitute z -> z**m, i.e. multiply every exponent by m."""
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise InvalidParameter(f"compose_power expects a positive integer, got {m!r}")
        return SparsePoly._raw(tuple((e * m, c) for e, c in self._terms))

    def truncate(self, order: int) -> "SparsePoly":
        """Drop every term with exponent >= order."""
        if not isinstance(order, int) or isinstance(order, bool) or order < 0:
            raise InvalidParameter(f"order must be a nonnegative integer, got {order!r}")
        terms = self._terms
        cut = len(terms)
        for i, (e, _) in enumerate(terms):
            if e >= order:
                cut = i
                break
        return SparsePoly._raw(terms[:cut])

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x) -> Fraction:
        """Exact value at a rational point."""
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self._terms:
            total += c * x**e
        return total

    def value_at_one(self) -> int:
        return sum(c for _, c in self._terms)

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        """Canonical JSON form: exponents and coefficients as decimal strings."""
        return {"terms": [[str(e), str(c)] for e, c in self._terms]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SparsePoly":
        if not isinstance(obj, dict) or "terms" not in obj:
            raise InvalidParameter("polynomial JSON must be an object with a 'terms' field")
        pairs = []
        for item in obj["terms"]:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise InvalidParameter(f"bad term entry {item!r}")
            try:
                pairs.append((int(item[0]), int(item[1])))
            except (TypeError, ValueError):
                raise InvalidParameter(f"bad term entry {item!r}")
        return cls(pairs)
