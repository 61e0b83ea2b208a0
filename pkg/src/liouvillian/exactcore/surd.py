"""Elements of a real quadratic field Q(sqrt D)."""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .scalars import Scalar, as_scalar, is_scalar, norm, render_scalar


def squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = k^2 * m`` with ``m`` squarefree; returns ``(k, m)``."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    k, m = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            m *= p
        p += 1
    return k, sign * m * n


class QuadSurd:
    """``a + b*sqrt(D)`` with rational ``a, b`` and squarefree ``D`` (not 0, 1)."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a: Scalar = 0, b: Scalar = 0, D: int = 2):
        if D in (0, 1):
            raise ValueError("D must be squarefree and different from 0 and 1")
        self.a = norm(Fraction(a))
        self.b = norm(Fraction(b))
        self.D = D

    @classmethod
    def sqrt(cls, n: Scalar, coeff: Scalar = 1) -> "QuadSurd | Scalar":
        """``coeff*sqrt(n)`` normalized; rational when ``n`` is a square."""
        n = Fraction(n)
        # sqrt(p/q) = sqrt(p*q)/q
        k, m = squarefree_split(n.numerator * n.denominator)
        c = norm(Fraction(coeff) * k / n.denominator)
        if m in (0, 1):
            return c
        return cls(0, c, m)

    def _lift(self, other) -> "QuadSurd | None":
        if isinstance(other, QuadSurd):
            if other.D != self.D:
                raise ValueError(f"mixing Q(sqrt {self.D}) and Q(sqrt {other.D})")
            return other
        if is_scalar(other):
            return QuadSurd(other, 0, self.D)
        return None

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadSurd(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadSurd(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadSurd(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.D)

    def norm(self) -> Scalar:
        return norm(Fraction(self.a) ** 2 - self.D * Fraction(self.b) ** 2)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero in quadratic field")
        p = self * o.conjugate()
        return QuadSurd(Fraction(p.a) / n, Fraction(p.b) / n, self.D)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other) -> bool:
        if is_scalar(other):
            return not self.b and self.a == other
        if isinstance(other, QuadSurd):
            return (self.a, self.b) == (other.a, other.b) and (not self.b or self.D == other.D)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.a) if not self.b else hash((self.a, self.b, self.D))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __complex__(self) -> complex:
        if self.D < 0:
            return complex(float(self.a), float(self.b) * math.sqrt(-self.D))
        return complex(float(self))

    def render(self) -> str:
        root = f"sqrt({self.D})"
        if not self.b:
            return render_scalar(self.a)
        mag = -self.b if self.b < 0 else self.b
        tail = root if mag == 1 else f"{render_scalar(mag)}*{root}"
        if not self.a:
            return ("-" if self.b < 0 else "") + tail
        return f"{render_scalar(self.a)} {'-' if self.b < 0 else '+'} {tail}"

    __str__ = render

    def __repr__(self) -> str:
        return f"QuadSurd({self.render()!r})"


_SURD_RE = re.compile(
    r"^\s*(?:(?P<a>[+-]?\s*\d+(?:/\d+)?)\s*(?=[+-]|$))?"
    r"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*?\s*)?sqrt\(\s*(?P<D>\d+(?:/\d+)?)\s*\))?\s*$"
)


def parse_surd(text: str) -> QuadSurd | Scalar:
    """Parse ``"3/4"``, ``"sqrt(24)"``, ``"-2*sqrt(6)"``, ``"1/2 + 3*sqrt(5)"``."""
    m = _SURD_RE.match(text)
    if not m or (m.group("a") is None and m.group("D") is None):
        raise ValueError(f"not a rational or quadratic surd: {text!r}")
    a = as_scalar(m.group("a").replace(" ", "")) if m.group("a") else 0
    if m.group("D") is None:
        return a
    coeff = as_scalar(m.group("b")) if m.group("b") else 1
    if m.group("sign") == "-":
        coeff = -coeff
    root = QuadSurd.sqrt(as_scalar(m.group("D")), coeff)
    return root + a if isinstance(root, QuadSurd) else norm(root + a)
