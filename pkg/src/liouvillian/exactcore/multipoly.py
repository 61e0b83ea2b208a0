"""Sparse multivariate polynomials over Q.

A :class:`MultiPoly` is a map from exponent vectors (over a declared,
ordered variable list) to nonzero rational coefficients. Values are
immutable; arithmetic between polynomials over different variable lists
embeds both into the naturally sorted union of the lists.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import NEG_INF, Scalar, as_scalar, is_scalar, lcm, norm, render_scalar

_NAME_RE = re.compile(r"^([A-Za-z_]*[A-Za-z_])(\d*)('*)$")


def natural_key(name: str):
    """Sort key putting ``a0 < a1 < a10 < b0 < lam < x`` and ``a < a' < a''``."""
    m = _NAME_RE.match(name)
    if not m:
        return (name, -1, 0)
    prefix, digits, primes = m.groups()
    return (prefix, int(digits) if digits else -1, len(primes))


def grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping | Iterable = (), _trusted: bool = False):
        self.vars = tuple(vars)
        if _trusted:
            self.terms = terms
            return
        arity = len(self.vars)
        if len(set(self.vars)) != arity:
            raise ValueError(f"duplicate variables in {self.vars}")
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise ValueError(f"exponent vector {exps} does not match arity {arity}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_scalar(c)
            if c:
                c = clean.get(exps, 0) + c
                if c:
                    clean[exps] = norm(c)
                else:
                    clean.pop(exps, None)
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c, vars: Sequence[str] = ()) -> "MultiPoly":
        c = as_scalar(c)
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c} if c else {}, _trusted=True)

    @classmethod
    def variable(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = (name,) if vars is None else tuple(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} not among {vars}")
        return cls(vars, {exps: 1}, _trusted=True)

    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "MultiPoly":
        return cls(tuple(vars), {}, _trusted=True)

    # -- structure ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), 0)

    def used_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def degree(self) -> int | float:
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, names: str | Iterable[str]) -> int | float:
        """Total degree in the given subset of variables."""
        if isinstance(names, str):
            names = (names,)
        idx = [i for i, v in enumerate(self.vars) if v in set(names)]
        if not self.terms:
            return NEG_INF
        return max(sum(e[i] for i in idx) for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Scalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    # -- variable bookkeeping -------------------------------------------
    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``vars``, which must contain every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        mapping = []
        for i, v in enumerate(self.vars):
            if v in pos:
                mapping.append((i, pos[v]))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v!r} in use, cannot drop it")
        n = len(vars)
        out = {}
        for exps, c in self.terms.items():
            new = [0] * n
            for i, j in mapping:
                new[j] = exps[i]
            out[tuple(new)] = c
        return MultiPoly(vars, out, _trusted=True)

    def trimmed(self) -> "MultiPoly":
        """Drop unused variables."""
        return self.with_vars(self.used_vars())

    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if is_scalar(other):
            return MultiPoly.constant(other, self.vars)
        return None

    @staticmethod
    def _align(p: "MultiPoly", q: "MultiPoly") -> tuple[tuple[str, ...], dict, dict]:
        if p.vars == q.vars:
            return p.vars, p.terms, q.terms
        vars = tuple(sorted(set(p.vars) | set(q.vars), key=natural_key))
        return vars, p.with_vars(vars).terms, q.with_vars(vars).terms

    # -- arithmetic -----------------------------------------------------
    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __pos__(self) -> "MultiPoly":
        return self

    def __add__(self, other):
        if is_scalar(other):
            if not other:
                return self
            zero = (0,) * len(self.vars)
            out = dict(self.terms)
            c = out.get(zero, 0) + other
            if c:
                out[zero] = norm(c)
            else:
                del out[zero]
            return MultiPoly(self.vars, out, _trusted=True)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vars, a, b = self._align(self, other)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = norm(s)
            else:
                del out[e]
        return MultiPoly(vars, out, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        if is_scalar(other):
            return self + (-other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.vars)
        if c == 1:
            return self
        return MultiPoly(self.vars, {e: norm(v * c) for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vars, a, b = self._align(self, other)
        if not a or not b:
            return MultiPoly.zero(vars)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly(vars, {e: norm(c) for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = MultiPoly.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(norm(Fraction(1) / other))
        if isinstance(other, MultiPoly):
            return self.exact_div(other)
        return NotImplemented

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ValueError otherwise."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        vars, a, b = self._align(self, other)
        lead_e, lead_c = max(b.items(), key=lambda t: grlex_key(t[0]))
        rest = [(e, c) for e, c in b.items() if e != lead_e]
        rem = dict(a)
        quot = {}
        while rem:
            e, c = max(rem.items(), key=lambda t: grlex_key(t[0]))
            qe = tuple(x - y for x, y in zip(e, lead_e))
            if any(x < 0 for x in qe):
                raise ValueError("division is not exact")
            qc = norm(Fraction(c) / lead_c)
            quot[qe] = qc
            del rem[e]
            for be, bc in rest:
                te = tuple(x + y for x, y in zip(qe, be))
                v = rem.get(te, 0) - qc * bc
                if v:
                    rem[te] = norm(v)
                else:
                    rem.pop(te, None)
        return MultiPoly(vars, quot, _trusted=True)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if is_scalar(other):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        _, a, b = self._align(self, other)
        return a == b

    def __hash__(self) -> int:
        return hash(frozenset(self._named_terms()))

    def _named_terms(self):
        for exps, c in self.terms.items():
            yield tuple((v, e) for v, e in zip(self.vars, exps) if e), c

    # -- calculus and substitution ---------------------------------------
    def diff(self, name: str) -> "MultiPoly":
        if name not in self.vars:
            return MultiPoly.zero(self.vars)
        i = self.vars.index(name)
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                new = exps[:i] + (e - 1,) + exps[i + 1:]
                out[new] = norm(c * e)
        return MultiPoly(self.vars, out, _trusted=True)

    def evaluate(self, values: Mapping[str, object], one=1):
        """Substitute every variable and sum; values may be any ring elements.

        ``one`` is the multiplicative identity of the target ring, used to
        seed power tables so that scalars become ring elements.
        """
        missing = [v for v in self.used_vars() if v not in values]
        if missing:
            raise KeyError(f"no value for {missing}")
        powers: list[dict[int, object]] = [{0: one} for _ in self.vars]

        def power(i: int, e: int):
            table = powers[i]
            if e not in table:
                k = max(k for k in table if k < e)
                acc = table[k]
                base = values[self.vars[i]]
                for j in range(k + 1, e + 1):
                    acc = acc * base
                    table[j] = acc
            return table[e]

        total = one * 0
        for exps, c in self.terms.items():
            term = None
            for i, e in enumerate(exps):
                if e:
                    f = power(i, e)
                    term = f if term is None else term * f
            total = total + (c if term is None else term * c)
        return total

    def subs(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute rational values for some variables."""
        keep = tuple(v for v in self.vars if v not in values)
        idx_keep = [i for i, v in enumerate(self.vars) if v not in values]
        idx_sub = [(i, as_scalar(values[v])) for i, v in enumerate(self.vars) if v in values]
        out: dict = {}
        for exps, c in self.terms.items():
            for i, val in idx_sub:
                if exps[i]:
                    c = c * val ** exps[i]
            if c:
                e = tuple(exps[i] for i in idx_keep)
                out[e] = out.get(e, 0) + c
        return MultiPoly(keep, {e: norm(c) for e, c in out.items() if c}, _trusted=True)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def numeric(self, point: Mapping[str, complex]) -> complex:
        """Floating evaluation, used by sampling checks only."""
        total = 0j
        vals = [point[v] if v in point else 0 for v in self.vars]
        for exps, c in self.terms.items():
            t = complex(float(c))
            for v, e in zip(vals, exps):
                if e:
                    t *= v**e
            total += t
        return total

    def numeric_scale(self, point: Mapping[str, complex]) -> float:
        """Sum of absolute term values; a yardstick for relative residuals."""
        vals = [abs(point[v]) if v in point else 0.0 for v in self.vars]
        total = 0.0
        for exps, c in self.terms.items():
            t = abs(float(c))
            for v, e in zip(vals, exps):
                if e:
                    t *= v**e
            total += t
        return total

    # -- normal forms -----------------------------------------------------
    def primitive(self) -> "MultiPoly":
        """Integer primitive part with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            if type(c) is Fraction:
                den = lcm(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        _, lead = max(ints.items(), key=lambda t: grlex_key(t[0]))
        if lead < 0:
            g = -g
        return MultiPoly(self.vars, {e: c // g for e, c in ints.items()}, _trusted=True)

    def is_scalar_multiple_of(self, other: "MultiPoly") -> bool:
        if not self or not other:
            return not self and not other
        return self.trimmed().primitive() == other.trimmed().primitive()

    # -- rendering ------------------------------------------------------
    def render(self) -> str:
        return render_terms(self.vars, self.sorted_terms())

    __str__ = render

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()!r}, vars={self.vars})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exps": list(e), "num": str(Fraction(c).numerator), "den": str(Fraction(c).denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls(
            data["vars"],
            [(t["exps"], Fraction(int(t["num"]), int(t["den"]))) for t in data["terms"]],
        )


def render_terms(vars: Sequence[str], ordered) -> str:
    """Render ``(exps, coeff)`` pairs in the given order as a signed sum."""
    pieces = []
    for exps, c in ordered:
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(vars, exps) if e)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = render_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{render_scalar(mag)}*{mono}"
        pieces.append((neg, body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
