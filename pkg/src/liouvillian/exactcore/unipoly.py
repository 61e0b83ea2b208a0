"""Dense univariate polynomials over an exact coefficient ring.

Coefficients may be rationals, :class:`MultiPoly` (symbolic parameters),
or :class:`QuadSurd` (elements of Q(sqrt D)); anything supporting ring
arithmetic and truthiness for zero testing works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .multipoly import MultiPoly, natural_key, render_terms
from .scalars import NEG_INF, field_div, is_scalar, norm


def _clean(c):
    if is_scalar(c):
        return norm(c)
    if isinstance(c, MultiPoly) and c.is_constant():
        return c.constant_value()
    return c


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_clean(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> "UniPoly":
        return cls([0] * k + [c], var)

    @classmethod
    def x(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    # -- structure ------------------------------------------------------
    def degree(self) -> int | float:
        """Degree, with ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "UniPoly") -> None:
        if other.var != self.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.var)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.var)
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly([other], self.var) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            if not other:
                return UniPoly([], self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        if not other:
            return UniPoly([], self.var)
        return UniPoly([other * c for c in self.coeffs], self.var)

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            if len(self.coeffs) > 1:
                return False
            return (self.coeffs[0] if self.coeffs else 0) == other
        if other.var != self.var:
            return False
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    # -- calculus -------------------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def integral(self) -> "UniPoly":
        """Antiderivative with zero constant term."""
        return UniPoly([0] + [c * Fraction(1, k + 1) for k, c in enumerate(self.coeffs)], self.var)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose_linear(self, scale=1, shift=0) -> "UniPoly":
        """``p(scale*x + shift)``."""
        inner = UniPoly([shift, scale], self.var)
        acc = UniPoly([], self.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def map_coefficients(self, fn) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs], self.var)

    # -- division over a field -------------------------------------------
    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq]
            if not c:
                continue
            q = field_div(c, lead)
            q = _clean(q)
            quot[k] = q
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * oc
        return UniPoly(quot, self.var), UniPoly(rem[:dq], self.var)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return UniPoly([_clean(field_div(c, lead)) for c in self.coeffs], self.var)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic gcd over a coefficient field."""
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    # -- conversion and rendering ---------------------------------------
    def coefficient_vars(self) -> tuple[str, ...]:
        names = set()
        for c in self.coeffs:
            if isinstance(c, MultiPoly):
                names.update(c.used_vars())
        return tuple(sorted(names, key=natural_key))

    def to_multipoly(self) -> MultiPoly:
        """Flatten to a MultiPoly over ``(var, *coefficient variables)``."""
        cvars = self.coefficient_vars()
        vars = (self.var,) + cvars
        terms = {}
        for k, c in enumerate(self.coeffs):
            if isinstance(c, MultiPoly):
                c = c.with_vars(cvars) if c.used_vars() else MultiPoly.constant(c.constant_value() if c else 0, cvars)
                for e, v in c.terms.items():
                    terms[(k,) + e] = v
            elif is_scalar(c):
                if c:
                    terms[(k,) + (0,) * len(cvars)] = c
            else:
                raise TypeError(f"cannot flatten coefficient {c!r}")
        return MultiPoly(vars, terms)

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        if all(is_scalar(c) for c in self.coeffs):
            ordered = [((k,), c) for k, c in reversed(list(enumerate(self.coeffs))) if c]
            return render_terms((self.var,), ordered)
        if all(is_scalar(c) or isinstance(c, MultiPoly) for c in self.coeffs):
            return _render_collected(self)
        if all(is_scalar(c) or hasattr(c, "D") for c in self.coeffs):
            return _render_surd(self)
        return " + ".join(
            f"({c})*{self.var}^{k}" if k else f"({c})" for k, c in reversed(list(enumerate(self.coeffs))) if c
        )

    __str__ = render

    def __repr__(self) -> str:
        return f"UniPoly({self.render()!r})"


def _render_collected(p: UniPoly) -> str:
    """Descending in the main variable, graded-lex inside each coefficient."""
    flat = p.to_multipoly()
    ordered = sorted(flat.terms.items(), key=lambda t: (t[0][0], sum(t[0][1:]), t[0][1:]), reverse=True)
    # coefficient variables print before the main variable
    return render_terms(flat.vars[1:] + flat.vars[:1], [(e[1:] + e[:1], c) for e, c in ordered])


def _render_surd(p: UniPoly) -> str:
    """Quadratic-field coefficients a + b*sqrt(D) print as two rational terms."""
    roots = {c.D for c in p.coeffs if hasattr(c, "D") and c.b}
    if len(roots) > 1:
        raise ValueError("coefficients from different quadratic fields")
    root = f"sqrt({roots.pop()})" if roots else "sqrt"
    ordered = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        a, b = (c.a, c.b) if hasattr(c, "D") else (c, 0)
        if a:
            ordered.append(((0, k), a))
        if b:
            ordered.append(((1, k), b))
    return render_terms((root, p.var), ordered)


def from_multipoly(p: MultiPoly, var: str = "x") -> UniPoly:
    """Collect a MultiPoly in ``var``; coefficients stay rational when possible."""
    if var not in p.vars:
        c = p.trimmed()
        return UniPoly([c.constant_value() if c.is_constant() else c], var)
    i = p.vars.index(var)
    rest = p.vars[:i] + p.vars[i + 1:]
    buckets: dict[int, dict] = {}
    for exps, c in p.terms.items():
        buckets.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = c
    deg = max(buckets, default=-1)
    coeffs = []
    for k in range(deg + 1):
        c = MultiPoly(rest, buckets.get(k, {}), _trusted=True).trimmed()
        coeffs.append(c.constant_value() if c.is_constant() else c)
    return UniPoly(coeffs, var)


def uni(coeffs: Sequence, var: str = "x") -> UniPoly:
    return UniPoly(coeffs, var)
