"""Exact rational scalars.

Rationals are plain ``int`` or ``fractions.Fraction`` values. Integral
fractions are collapsed back to ``int`` so that integer-heavy polynomials
(the universal obstructions, band matrices) stay on the fast int path.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction]

NEG_INF = float("-inf")
"""Degree of the zero polynomial. Deliberately not an ``int``."""


def norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def as_scalar(value) -> Scalar:
    """Coerce ``value`` (int, Fraction, or text like ``"-3/4"``) to a scalar."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return norm(value)
    if isinstance(value, Rational):
        return norm(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return norm(Fraction(value.strip()))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def exact_quotient(a: Scalar, b: Scalar) -> Scalar:
    """``a / b`` in Q, kept as int when the division is exact."""
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return norm(Fraction(a) / b)


def field_div(a, b):
    """``a / b`` for rationals or any exact field element (never a float)."""
    if is_scalar(a) and is_scalar(b):
        return exact_quotient(a, b)
    q = a / b
    return norm(q) if is_scalar(q) else q


def render_scalar(c: Scalar) -> str:
    if type(c) is int:
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def integer_root(value: int, k: int) -> int | None:
    """Exact non-negative integer ``k``-th root of ``value``, or None."""
    if value < 0:
        return None
    if value in (0, 1):
        return value
    lo, hi = 0, 1 << (value.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == value else None


def rational_root(value: Scalar, k: int) -> Scalar | None:
    """Positive rational ``k``-th root of a positive rational, or None."""
    value = Fraction(value)
    if value <= 0:
        return None
    num = integer_root(value.numerator, k)
    den = integer_root(value.denominator, k)
    if num is None or den is None:
        return None
    return norm(Fraction(num, den))
